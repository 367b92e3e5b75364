use std::fmt;



use super::expr::OperatorExpr;
use super::monomial::Monomial;
use crate::scalar::ExactCoeff;

/// Canonical text form. Terms come out in map order (μ-power, then `β`,
/// then word); a coefficient with both real and imaginary parts is written
/// as two adjacent terms.
pub fn render<R: ExactCoeff>(x: &OperatorExpr<R>) -> String {
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for (m, c) in x.terms() {
        if !c.re.is_zero() {
            pieces.push((c.re.is_negative(), term_body(&c.re, false, m)));
        }
        if !c.im.is_zero() {
            pieces.push((c.im.is_negative(), term_body(&c.im, true, m)));
        }
    }
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (neg, body)) in pieces.into_iter().enumerate() {
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

fn term_body<R: ExactCoeff>(c: &R, imag: bool, m: &Monomial) -> String {
    let mut parts: Vec<String> = Vec::new();
    let unit = c.is_one() || (-c.clone()).is_one();
    if !unit {
        parts.push(c.fmt_abs());
    }
    if imag {
        parts.push("i".into());
    }
    match m.mu {
        0 => {}
        1 => parts.push("mu".into()),
        k => parts.push(format!("mu^{k}")),
    }
    if m.beta {
        parts.push("beta".into());
    }
    let mut idx = 0;
    while idx < m.word.len() {
        let l = m.word[idx];
        let mut run = 1;
        while idx + run < m.word.len() && m.word[idx + run] == l {
            run += 1;
        }
        if run == 1 {
            parts.push(l.to_string());
        } else {
            parts.push(format!("{l}^{run}"));
        }
        idx += run;
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl<R: ExactCoeff> fmt::Display for OperatorExpr<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl<R: ExactCoeff> std::str::FromStr for OperatorExpr<R> {
    type Err = super::parse::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse(s)
    }
}
