use clap::{Subcommand, ValueEnum};
use fwkit::report::{Case, Verdict, VerificationReport};
use fwkit::symbolic::{
    check_identity, fw1950_compose, s_fw_series, verify_exponential_method, SeriesOrder, IDENTITY_NAMES,
};
use fwkit::{BigRational, Expr};

use crate::{Outcome, TOOL_VERSION};

/// Highest order accepted on the command line.
const MAX_ORDER: u32 = 10;

#[derive(Subcommand, Debug)]
pub enum SymbolicCmd {
    /// Print the exponential generator S_FW through μ^N.
    Sfw {
        #[arg(long)]
        order: u32,
    },
    /// Compose the first three iterates of the 1950 method and compare with S_FW.
    #[command(name = "verify-fw1950")]
    VerifyFw1950 {
        #[arg(long, default_value_t = 3)]
        order: u32,
        /// Expected verdict; the case passes when the verdict matches.
        #[arg(long, value_enum, default_value_t = Expect::Fw)]
        expect: Expect,
    },
    /// Check a named operator identity (or `all`) term by term.
    Identity {
        #[arg(long)]
        name: String,
        #[arg(long)]
        order: u32,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Fw,
    NotFw,
}

fn check_order(order: u32, min: u32) -> Result<SeriesOrder, String> {
    if order < min || order > MAX_ORDER {
        return Err(format!("--order must be between {min} and {MAX_ORDER}, got {order}"));
    }
    Ok(SeriesOrder(order))
}

pub fn run(cmd: &SymbolicCmd) -> Outcome {
    match cmd {
        SymbolicCmd::Sfw { order } => match check_order(*order, 1) {
            Ok(order) => sfw(order),
            Err(e) => Outcome::Usage(e),
        },
        SymbolicCmd::VerifyFw1950 { order, expect } => match check_order(*order, 3) {
            Ok(order) => verify_fw1950(order, *expect),
            Err(e) => Outcome::Usage(e),
        },
        SymbolicCmd::Identity { name, order } => {
            let order = match check_order(*order, 1) {
                Ok(o) => o,
                Err(e) => return Outcome::Usage(e),
            };
            if name != "all" && !IDENTITY_NAMES.contains(&name.as_str()) {
                return Outcome::Usage(format!("unknown identity `{name}`; known: all, {}", IDENTITY_NAMES.join(", ")));
            }
            identity(name, order)
        }
    }
}

fn sfw(order: SeriesOrder) -> Outcome {
    let s: Expr = s_fw_series(order);
    let mut report = VerificationReport::new("symbolic/sfw", TOOL_VERSION);
    report.push(
        Case::new("s_fw_series", Verdict::Pass, s.to_string())
            .detail("order", order.get())
            .detail("terms", s.len()),
    );
    Outcome::Report(report)
}

fn verify_fw1950(order: SeriesOrder, expect: Expect) -> Outcome {
    let mut report = VerificationReport::new("symbolic/verify-fw1950", TOOL_VERSION);
    let frak: Expr = match fw1950_compose(order) {
        Ok(x) => x,
        Err(e) => return Outcome::Usage(e.to_string()),
    };
    let v = verify_exponential_method::<BigRational>(&frak, order);
    report.push(Case::new("composed_exponent", Verdict::Pass, v.candidate.to_string()));
    report.push(Case::new("s_fw_series", Verdict::Pass, v.reference.to_string()));
    let is_fw = v.is_fw();
    let verdict = if is_fw == (expect == Expect::Fw) { Verdict::Pass } else { Verdict::Fail };
    let mut case = Case::new("fw_property", verdict, v.residual.to_string())
        .detail("order", order.get())
        .detail("result", if is_fw { "fw" } else { "not-fw" })
        .detail("expected", if expect == Expect::Fw { "fw" } else { "not-fw" });
    if let Some(k) = v.lowest_order {
        let parity = if v.lowest_terms.odd_part().is_zero() { "even" } else { "odd" };
        case = case
            .detail("lowest_order", k)
            .detail("lowest_terms", v.lowest_terms.to_string())
            .detail("lowest_terms_parity", parity);
    }
    report.push(case);
    Outcome::Report(report)
}

fn identity(name: &str, order: SeriesOrder) -> Outcome {
    let names: Vec<&str> = if name == "all" { IDENTITY_NAMES.to_vec() } else { vec![name] };
    let mut report = VerificationReport::new("symbolic/identity", TOOL_VERSION);
    for n in names {
        let check = check_identity::<BigRational>(n, order).expect("known identity");
        let verdict = if check.holds() { Verdict::Pass } else { Verdict::Fail };
        report.push(Case::new(n, verdict, check.residual.to_string()).detail("order", order.get()));
    }
    Outcome::Report(report)
}
