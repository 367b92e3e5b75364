use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::hamiltonian::{BetaStructure, BlockHamiltonian, HermiticityMode};
use super::linalg::{c, CMatrix, GeneralEigen, HermitianEigen};
use super::NumericError;
use crate::scalar::{lit, Real};

/// Redraws allowed for `spin1-pseudo` before giving up on a real spectrum.
pub const SPIN1_MAX_DRAWS: usize = 64;

/// Description of a model Hamiltonian. Units `ħ = c = 1`; `mass` is `mc²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelSpec {
    /// `H = βm + α·p` in the standard representation (4×4).
    FreeDirac { mass: f64, momentum: [f64; 3] },
    /// Direct sum of `blocks` 2×2 cells; cell `j` has `O = o_j σ₁`,
    /// `E = e_j·1` with `(o_j, e_j) = (odd, even)·(j+1)/blocks`.
    CommutingCase { mass: f64, odd: f64, even: f64, blocks: usize },
    /// Seeded Hermitian block matrix with `‖E‖ = ‖O‖ = scale·mass`
    /// (spectral norms).
    RandomBlock { dim: usize, seed: u64, scale: f64, mass: f64 },
    /// Dirac particle in a uniform field `B ẑ` on oscillator levels `0..=levels`.
    LandauDirac { mass: f64, field: f64, pz: f64, levels: usize },
    /// 6×6 β-pseudo-Hermitian `H = βm + scale·(X + βX†β)/2`, redrawn until
    /// the spectrum is real.
    Spin1Pseudo { seed: u64, scale: f64, mass: f64 },
}

fn invalid(msg: impl Into<String>) -> NumericError {
    NumericError::InvalidInput(msg.into())
}

impl ModelSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ModelSpec::FreeDirac { .. } => "free-dirac",
            ModelSpec::CommutingCase { .. } => "commuting-case",
            ModelSpec::RandomBlock { .. } => "random-block",
            ModelSpec::LandauDirac { .. } => "landau-dirac",
            ModelSpec::Spin1Pseudo { .. } => "spin1-pseudo",
        }
    }

    pub fn mass(&self) -> f64 {
        match *self {
            ModelSpec::FreeDirac { mass, .. }
            | ModelSpec::CommutingCase { mass, .. }
            | ModelSpec::RandomBlock { mass, .. }
            | ModelSpec::LandauDirac { mass, .. }
            | ModelSpec::Spin1Pseudo { mass, .. } => mass,
        }
    }

    /// The same model with its perturbation scale replaced, if it has one.
    pub fn with_scale(&self, s: f64) -> Option<ModelSpec> {
        match self.clone() {
            ModelSpec::RandomBlock { dim, seed, mass, .. } => Some(ModelSpec::RandomBlock { dim, seed, scale: s, mass }),
            ModelSpec::Spin1Pseudo { seed, mass, .. } => Some(ModelSpec::Spin1Pseudo { seed, scale: s, mass }),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), NumericError> {
        let m = self.mass();
        if !(m.is_finite() && m > 0.0) {
            return Err(invalid(format!("mass must be positive, got {m}")));
        }
        match *self {
            ModelSpec::FreeDirac { momentum, .. } => {
                if momentum.iter().any(|p| !p.is_finite()) {
                    return Err(invalid("momentum must be finite"));
                }
            }
            ModelSpec::CommutingCase { mass, odd, even, blocks } => {
                if blocks == 0 {
                    return Err(invalid("blocks must be at least 1"));
                }
                // sign(H) = (βM + O)/ε requires |e_j| < ε_j in every cell; the
                // outermost cell is the binding one
                if even.abs() >= (mass * mass + odd * odd).sqrt() {
                    return Err(invalid("|even| must stay below sqrt(mass² + odd²)"));
                }
            }
            ModelSpec::RandomBlock { dim, scale, .. } => {
                if dim < 2 || dim % 2 != 0 {
                    return Err(invalid(format!("dimension must be even and at least 2, got {dim}")));
                }
                if !(scale.is_finite() && scale >= 0.0) {
                    return Err(invalid("scale must be nonnegative"));
                }
            }
            ModelSpec::LandauDirac { field, pz, levels, .. } => {
                if !(field.is_finite() && field > 0.0) {
                    return Err(invalid("field strength must be positive"));
                }
                if !pz.is_finite() {
                    return Err(invalid("p_z must be finite"));
                }
                if levels < 4 {
                    return Err(invalid(format!("truncation must be at least 4 levels, got {levels}")));
                }
            }
            ModelSpec::Spin1Pseudo { scale, .. } => {
                if !(scale.is_finite() && scale >= 0.0) {
                    return Err(invalid("scale must be nonnegative"));
                }
            }
        }
        Ok(())
    }

    fn fields(&self) -> Vec<(&'static str, String)> {
        match self {
            ModelSpec::FreeDirac { mass, momentum } => vec![
                ("mass", mass.to_string()),
                ("momentum", momentum.iter().map(f64::to_string).collect::<Vec<_>>().join(",")),
            ],
            ModelSpec::CommutingCase { mass, odd, even, blocks } => vec![
                ("mass", mass.to_string()),
                ("odd", odd.to_string()),
                ("even", even.to_string()),
                ("blocks", blocks.to_string()),
            ],
            ModelSpec::RandomBlock { dim, seed, scale, mass } => vec![
                ("dim", dim.to_string()),
                ("seed", seed.to_string()),
                ("scale", scale.to_string()),
                ("mass", mass.to_string()),
            ],
            ModelSpec::LandauDirac { mass, field, pz, levels } => vec![
                ("mass", mass.to_string()),
                ("field", field.to_string()),
                ("pz", pz.to_string()),
                ("levels", levels.to_string()),
            ],
            ModelSpec::Spin1Pseudo { seed, scale, mass } => {
                vec![("seed", seed.to_string()), ("scale", scale.to_string()), ("mass", mass.to_string())]
            }
        }
    }
}

/// Flat record: `kind=random-block dim=8 seed=42 scale=0.5 mass=1`.
impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kind={}", self.kind())?;
        for (k, v) in self.fields() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for ModelSpec {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut map = serde_json::Map::new();
        for pair in s.split_whitespace() {
            let (k, v) = pair.split_once('=').ok_or_else(|| invalid(format!("expected key=value, got `{pair}`")))?;
            let value = match k {
                "kind" => serde_json::Value::String(v.to_string()),
                "momentum" => {
                    let parts: Result<Vec<f64>, _> = v.split(',').map(str::parse).collect();
                    let parts = parts.map_err(|_| invalid(format!("bad momentum `{v}`")))?;
                    serde_json::json!(parts)
                }
                "dim" | "seed" | "blocks" | "levels" => {
                    let x: u64 = v.parse().map_err(|_| invalid(format!("{k} must be a nonnegative integer, got `{v}`")))?;
                    serde_json::json!(x)
                }
                _ => {
                    let x: f64 = v.parse().map_err(|_| invalid(format!("bad value for {k}: `{v}`")))?;
                    serde_json::json!(x)
                }
            };
            if map.insert(k.to_string(), value).is_some() {
                return Err(invalid(format!("duplicate key {k}")));
            }
        }
        serde_json::from_value(serde_json::Value::Object(map)).map_err(|e| invalid(e.to_string()))
    }
}

fn pauli(k: usize) -> [[Complex<f64>; 2]; 2] {
    let z = Complex::new(0.0, 0.0);
    let one = Complex::new(1.0, 0.0);
    let i = Complex::new(0.0, 1.0);
    match k {
        0 => [[z, one], [one, z]],
        1 => [[z, -i], [i, z]],
        _ => [[one, z], [z, -one]],
    }
}

fn to_t<T: Real>(m: &CMatrix<f64>) -> CMatrix<T> {
    m.map(|z| Complex::new(lit::<T>(z.re), lit::<T>(z.im)))
}

fn spectral_norm(m: &CMatrix<f64>) -> f64 {
    HermitianEigen::new(m).values.iter().fold(0.0f64, |a, v| a.max(v.abs()))
}

fn random_entry(rng: &mut ChaCha8Rng) -> Complex<f64> {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn free_dirac(mass: f64, p: [f64; 3]) -> CMatrix<f64> {
    let mut h = CMatrix::<f64>::zeros(4, 4);
    for i in 0..2 {
        h[(i, i)] = c(mass);
        h[(i + 2, i + 2)] = c(-mass);
    }
    for (k, &pk) in p.iter().enumerate() {
        let s = pauli(k);
        for i in 0..2 {
            for j in 0..2 {
                h[(i, j + 2)] += s[i][j] * pk;
                h[(i + 2, j)] += s[i][j] * pk;
            }
        }
    }
    h
}

fn commuting(mass: f64, odd: f64, even: f64, blocks: usize) -> CMatrix<f64> {
    let n = 2 * blocks;
    let mut h = CMatrix::<f64>::zeros(n, n);
    for j in 0..blocks {
        let t = (j + 1) as f64 / blocks as f64;
        let (u, l) = (j, blocks + j);
        h[(u, u)] = c(mass + even * t);
        h[(l, l)] = c(-mass + even * t);
        h[(u, l)] = c(odd * t);
        h[(l, u)] = c(odd * t);
    }
    h
}

fn random_block(dim: usize, seed: u64, scale: f64, mass: f64) -> CMatrix<f64> {
    let half = dim / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = CMatrix::<f64>::from_fn(dim, dim, |_, _| random_entry(&mut rng));
    let beta = BetaStructure { n_upper: half, n_lower: half };
    let herm = (&x + x.adjoint()) * c(0.5);
    let mut even = beta.even_part(&herm);
    let mut odd = beta.odd_part(&herm);
    let target = scale * mass;
    for part in [&mut even, &mut odd] {
        let n = spectral_norm(part);
        *part *= c(if n > 0.0 { target / n } else { 0.0 });
    }
    beta.matrix::<f64>() * c(mass) + even + odd
}

fn landau(mass: f64, field: f64, pz: f64, levels: usize) -> CMatrix<f64> {
    let n = levels + 1;
    let idx = |component: usize, level: usize| component * n + level;
    let mut h = CMatrix::<f64>::zeros(4 * n, 4 * n);
    let w = (2.0 * field).sqrt();
    for k in 0..n {
        for comp in 0..2 {
            h[(idx(comp, k), idx(comp, k))] = c(mass);
            h[(idx(comp + 2, k), idx(comp + 2, k))] = c(-mass);
        }
    }
    // σ·π = [[p_z, √(2B) a], [√(2B) a†, −p_z]] in both off-diagonal blocks
    for (upper, lower) in [(0usize, 2usize), (2, 0)] {
        for k in 0..n {
            h[(idx(upper, k), idx(lower, k))] = c(pz);
            h[(idx(upper + 1, k), idx(lower + 1, k))] = c(-pz);
            if k + 1 < n {
                let a = w * ((k + 1) as f64).sqrt();
                // ⟨k|a|k+1⟩ couples spin-down at k+1 into spin-up at k
                h[(idx(upper, k), idx(lower + 1, k + 1))] = c(a);
                h[(idx(upper + 1, k + 1), idx(lower, k))] = c(a);
            }
        }
    }
    h
}

fn spin1_pseudo(seed: u64, scale: f64, mass: f64) -> Result<CMatrix<f64>, NumericError> {
    let beta = BetaStructure { n_upper: 3, n_lower: 3 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_imag = f64::NAN;
    for _ in 0..SPIN1_MAX_DRAWS {
        let x = CMatrix::<f64>::from_fn(6, 6, |_, _| random_entry(&mut rng));
        let p = (&x + beta.conjugate(&x.adjoint())) * c(0.5);
        let pn = super::linalg::norm(&p);
        let h = beta.matrix::<f64>() * c(mass) + p * c(if pn > 0.0 { scale * mass / pn } else { 0.0 });
        let eig = GeneralEigen::new(&h)?;
        let radius = eig.values.iter().fold(0.0f64, |a, z| a.max(z.norm()));
        last_imag = eig.max_imag();
        if last_imag <= super::Tolerances::default().real_spectrum * radius.max(1.0) {
            return Ok(h);
        }
    }
    Err(NumericError::ComplexSpectrum { max_imag: last_imag })
}

/// Builds the model. The matrix is generated in `f64` and then converted, so
/// a given spec yields the same matrix bits for a given `T`.
pub fn make_model<T: Real>(spec: &ModelSpec) -> Result<BlockHamiltonian<T>, NumericError> {
    spec.validate()?;
    let (matrix, beta, mode) = match *spec {
        ModelSpec::FreeDirac { mass, momentum } => {
            (free_dirac(mass, momentum), BetaStructure::symmetric(4)?, HermiticityMode::Hermitian)
        }
        ModelSpec::CommutingCase { mass, odd, even, blocks } => (
            commuting(mass, odd, even, blocks),
            BetaStructure::symmetric(2 * blocks)?,
            HermiticityMode::Hermitian,
        ),
        ModelSpec::RandomBlock { dim, seed, scale, mass } => {
            (random_block(dim, seed, scale, mass), BetaStructure::symmetric(dim)?, HermiticityMode::Hermitian)
        }
        ModelSpec::LandauDirac { mass, field, pz, levels } => (
            landau(mass, field, pz, levels),
            BetaStructure::symmetric(4 * (levels + 1))?,
            HermiticityMode::Hermitian,
        ),
        ModelSpec::Spin1Pseudo { seed, scale, mass } => {
            (spin1_pseudo(seed, scale, mass)?, BetaStructure::symmetric(6)?, HermiticityMode::BetaPseudoHermitian)
        }
    };
    BlockHamiltonian::new(to_t(&matrix), beta, mode, lit(spec.mass()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::linalg::max_abs;

    #[test]
    fn flat_record_round_trip() {
        let specs = [
            ModelSpec::FreeDirac { mass: 1.0, momentum: [0.0, 0.0, 1.0] },
            ModelSpec::CommutingCase { mass: 1.0, odd: 0.5, even: 0.25, blocks: 3 },
            ModelSpec::RandomBlock { dim: 8, seed: 42, scale: 0.3, mass: 1.0 },
            ModelSpec::LandauDirac { mass: 1.0, field: 0.1, pz: 0.0, levels: 60 },
            ModelSpec::Spin1Pseudo { seed: 3, scale: 0.3, mass: 1.0 },
        ];
        for s in specs {
            let text = s.to_string();
            assert_eq!(text.parse::<ModelSpec>().unwrap(), s, "{text}");
            let json = serde_json::to_string(&s).unwrap();
            assert_eq!(serde_json::from_str::<ModelSpec>(&json).unwrap(), s);
        }
        assert_eq!(
            ModelSpec::RandomBlock { dim: 8, seed: 42, scale: 0.5, mass: 1.0 }.to_string(),
            "kind=random-block dim=8 seed=42 scale=0.5 mass=1"
        );
        assert!("kind=random-block dim=8".parse::<ModelSpec>().is_err());
        assert!("kind=bogus".parse::<ModelSpec>().is_err());
    }

    #[test]
    fn rest_frame_dirac_is_beta() {
        let h = make_model::<f64>(&ModelSpec::FreeDirac { mass: 1.0, momentum: [0.0; 3] }).unwrap();
        assert_eq!(h.matrix(), &h.beta_matrix());
    }

    #[test]
    fn random_block_is_hermitian_and_deterministic() {
        let spec = ModelSpec::RandomBlock { dim: 8, seed: 42, scale: 0.3, mass: 1.0 };
        let a = make_model::<f64>(&spec).unwrap();
        let b = make_model::<f64>(&spec).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        assert_eq!(max_abs(&(a.matrix() - a.matrix().adjoint())), 0.0);
        let (e, o) = a.split_even_odd();
        assert!((spectral_norm(&e) - 0.3).abs() < 1e-12);
        assert!((spectral_norm(&o) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn invalid_parameters() {
        let bad = [
            ModelSpec::FreeDirac { mass: 0.0, momentum: [0.0; 3] },
            ModelSpec::RandomBlock { dim: 7, seed: 1, scale: 0.3, mass: 1.0 },
            ModelSpec::LandauDirac { mass: 1.0, field: 0.1, pz: 0.0, levels: 3 },
            ModelSpec::CommutingCase { mass: 1.0, odd: 0.0, even: 1.5, blocks: 2 },
        ];
        for s in bad {
            assert!(matches!(make_model::<f64>(&s), Err(NumericError::InvalidInput(_))), "{s}");
        }
    }

    #[test]
    fn landau_is_hermitian_with_exact_square() {
        let h = make_model::<f64>(&ModelSpec::LandauDirac { mass: 1.0, field: 0.1, pz: 0.2, levels: 6 }).unwrap();
        let m = h.matrix();
        assert_eq!(max_abs(&(m - m.adjoint())), 0.0);
        let eig = HermitianEigen::new(m).sorted_values();
        // positive branch: √(1 + p_z² + 2Bk), k = 0 once, k ≥ 1 twice
        let pos: Vec<f64> = eig.into_iter().filter(|&e| e > 0.0).collect();
        assert!((pos[0] - (1.0f64 + 0.04).sqrt()).abs() < 1e-12);
        assert!((pos[pos.len() - 1] - (1.0f64 + 0.04 + 0.2 * 6.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn spin1_pseudo_has_real_spectrum() {
        let spec = ModelSpec::Spin1Pseudo { seed: 5, scale: 0.3, mass: 1.0 };
        let h = make_model::<f64>(&spec).unwrap();
        assert_eq!(h.mode(), HermiticityMode::BetaPseudoHermitian);
        assert!(GeneralEigen::new(h.matrix()).unwrap().max_imag() < 1e-8);
        assert!(matches!(
            make_model::<f64>(&ModelSpec::Spin1Pseudo { seed: 5, scale: 50.0, mass: 1.0 }),
            Err(NumericError::ComplexSpectrum { .. })
        ));
    }
}
