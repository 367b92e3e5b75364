use std::fmt;

/// Free generators of the algebra besides `β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// Even operator: commutes with `β`.
    E,
    /// Odd operator: anticommutes with `β`.
    O,
}

impl Letter {
    pub fn is_odd(self) -> bool {
        matches!(self, Letter::O)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E => f.write_str("E"),
            Letter::O => f.write_str("O"),
        }
    }
}

/// `μ^mu · β^beta · word`, with `β` always normalized to the front.
///
/// Field order matters: the derived `Ord` sorts by `mu`, then `beta`, then
/// the word lexicographically, which is the rendering order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub mu: i32,
    pub beta: bool,
    pub word: Vec<Letter>,
}

impl Monomial {
    pub fn identity() -> Self {
        Monomial { mu: 0, beta: false, word: Vec::new() }
    }

    pub fn new(mu: i32, beta: bool, word: Vec<Letter>) -> Self {
        Monomial { mu, beta, word }
    }

    pub fn is_identity(&self) -> bool {
        self.mu == 0 && !self.beta && self.word.is_empty()
    }

    pub fn odd_count(&self) -> usize {
        self.word.iter().filter(|l| l.is_odd()).count()
    }

    /// Parity under `x ↦ βxβ`.
    pub fn is_odd(&self) -> bool {
        self.odd_count() % 2 == 1
    }

    /// Product of two monomials and the sign picked up by commuting the
    /// right factor's `β` through the left word.
    pub fn mul(&self, rhs: &Monomial) -> (Monomial, bool) {
        let negate = rhs.beta && self.is_odd();
        let mut word = Vec::with_capacity(self.word.len() + rhs.word.len());
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&rhs.word);
        (
            Monomial { mu: self.mu + rhs.mu, beta: self.beta ^ rhs.beta, word },
            negate,
        )
    }
}
