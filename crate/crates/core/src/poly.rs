//! Exact multivariate polynomials in the named variables c, cprime, M, Ninv
//! with integer coefficients.
//!
//! The string form is fixed and parseable both ways: terms joined by ` + ` /
//! ` - `, factors joined by `*`, powers written `c^2`. Terms are emitted in
//! ascending powers of c (then cprime, M, Ninv), e.g. `c + 3*c^2 + c^3`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("coefficient overflow in exact arithmetic")]
    Overflow,
}

/// The variable set. Ninv stands for N⁻¹, so every finite-size expansion is
/// an ordinary polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    C,
    CPrime,
    M,
    Ninv,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::C, Var::CPrime, Var::M, Var::Ninv];

    pub fn name(self) -> &'static str {
        match self {
            Var::C => "c",
            Var::CPrime => "cprime",
            Var::M => "M",
            Var::Ninv => "Ninv",
        }
    }

    fn index(self) -> usize {
        match self {
            Var::C => 0,
            Var::CPrime => 1,
            Var::M => 2,
            Var::Ninv => 3,
        }
    }

    fn from_name(s: &str) -> Option<Var> {
        match s {
            "c" => Some(Var::C),
            "cprime" => Some(Var::CPrime),
            "M" => Some(Var::M),
            "Ninv" => Some(Var::Ninv),
            _ => None,
        }
    }
}

type Exps = [u16; 4];

/// Exact polynomial; zero-coefficient terms are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exps, i128>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(v: i128) -> Self {
        let mut p = MultiPoly::default();
        if v != 0 {
            p.terms.insert([0; 4], v);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(&[(v, 1)], 1)
    }

    pub fn monomial(powers: &[(Var, u16)], coeff: i128) -> Self {
        let mut p = MultiPoly::default();
        if coeff == 0 {
            return p;
        }
        let mut e = [0u16; 4];
        for &(v, k) in powers {
            e[v.index()] += k;
        }
        p.terms.insert(e, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Exps, coeff: i128) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(0);
        *entry = entry.checked_add(coeff).expect("coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c.checked_neg().expect("coefficient overflow"));
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly::zero().sub(self)
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (&ea, &ca) in &self.terms {
            for (&eb, &cb) in &other.terms {
                let mut e = [0u16; 4];
                for i in 0..4 {
                    e[i] = ea[i].checked_add(eb[i]).expect("exponent overflow");
                }
                out.add_term(e, ca.checked_mul(cb).expect("coefficient overflow"));
            }
        }
        out
    }

    pub fn scale(&self, k: i128) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (&e, &c) in &self.terms {
            out.add_term(e, c.checked_mul(k).expect("coefficient overflow"));
        }
        out
    }

    /// Coefficient of a given exponent vector.
    pub fn coeff(&self, exps: Exps) -> i128 {
        self.terms.get(&exps).copied().unwrap_or(0)
    }

    /// Coefficient of c^k in a polynomial in c alone.
    pub fn coeff_c(&self, k: u16) -> i128 {
        self.coeff([k, 0, 0, 0])
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exps, i128)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn uses_only(&self, allowed: &[Var]) -> bool {
        let mut mask = [false; 4];
        for v in allowed {
            mask[v.index()] = true;
        }
        self.terms
            .keys()
            .all(|e| (0..4).all(|i| mask[i] || e[i] == 0))
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: Var) -> MultiPoly {
        let i = v.index();
        let mut out = MultiPoly::zero();
        for (&e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e;
            ne[i] -= 1;
            out.add_term(ne, c.checked_mul(e[i] as i128).expect("coefficient overflow"));
        }
        out
    }

    /// Exact evaluation over the rationals.
    pub fn eval(&self, assign: &dyn Fn(Var) -> BigRational) -> BigRational {
        let vals: Vec<BigRational> = Var::ALL.iter().map(|&v| assign(v)).collect();
        let mut acc = BigRational::zero();
        for (&e, &c) in &self.terms {
            let mut term = BigRational::from(BigInt::from(c));
            for i in 0..4 {
                for _ in 0..e[i] {
                    term *= &vals[i];
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_f64(&self, assign: &dyn Fn(Var) -> f64) -> f64 {
        let vals: [f64; 4] = [
            assign(Var::C),
            assign(Var::CPrime),
            assign(Var::M),
            assign(Var::Ninv),
        ];
        let mut acc = 0.0;
        for (&e, &c) in &self.terms {
            let mut term = c as f64;
            for i in 0..4 {
                term *= vals[i].powi(e[i] as i32);
            }
            acc += term;
        }
        acc
    }

    /// Evaluation of a univariate polynomial in c.
    pub fn eval_c(&self, c: &BigRational) -> BigRational {
        assert!(self.uses_only(&[Var::C]), "polynomial is not in c alone");
        self.eval(&|v| match v {
            Var::C => c.clone(),
            _ => BigRational::zero(),
        })
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != 1 || e == [0; 4] {
                factors.push(mag.to_string());
            }
            for v in Var::ALL {
                let k = e[v.index()];
                if k == 1 {
                    factors.push(v.name().to_string());
                } else if k > 1 {
                    factors.push(format!("{}^{}", v.name(), k));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for MultiPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        // split into signed terms
        let mut terms: Vec<(i128, String)> = Vec::new();
        let mut sign = 1i128;
        let mut current = String::new();
        for (i, ch) in compact.chars().enumerate() {
            match ch {
                '+' | '-' if i > 0 => {
                    if current.is_empty() {
                        return Err(PolyError::Parse("dangling sign".into()));
                    }
                    terms.push((sign, std::mem::take(&mut current)));
                    sign = if ch == '-' { -1 } else { 1 };
                }
                '-' => sign = -1,
                '+' => {}
                _ => current.push(ch),
            }
        }
        if current.is_empty() {
            return Err(PolyError::Parse("dangling sign".into()));
        }
        terms.push((sign, current));

        let mut out = MultiPoly::zero();
        for (sign, text) in terms {
            let mut coeff: i128 = sign;
            let mut exps = [0u16; 4];
            for factor in text.split('*') {
                if factor.is_empty() {
                    return Err(PolyError::Parse("empty factor".into()));
                }
                if factor.chars().next().unwrap().is_ascii_digit() {
                    let v: i128 = factor
                        .parse()
                        .map_err(|_| PolyError::Parse(format!("bad number `{factor}`")))?;
                    coeff = coeff.checked_mul(v).ok_or(PolyError::Overflow)?;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((n, p)) => {
                        let k: u16 = p
                            .parse()
                            .map_err(|_| PolyError::Parse(format!("bad power `{p}`")))?;
                        (n, k)
                    }
                    None => (factor, 1),
                };
                let var = Var::from_name(name)
                    .ok_or_else(|| PolyError::Parse(format!("unknown variable `{name}`")))?;
                exps[var.index()] += power;
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }
}

/// Exact binomial coefficient as i128.
pub fn binom_i128(n: u64, k: u64) -> i128 {
    crate::enumerate::binomial(n, k)
}

/// Rational helpers for evaluating polynomials on CLI-style "p/q" inputs.
pub fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| PolyError::Parse(format!("bad numerator `{num}`")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| PolyError::Parse(format!("bad denominator `{den}`")))?;
        if d.is_zero() {
            return Err(PolyError::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s
            .parse()
            .map_err(|_| PolyError::Parse(format!("bad integer `{s}` (use p/q for rationals)")))?;
        Ok(BigRational::from(n))
    }
}

/// Renders a rational as an exact string, integer when possible.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rational to nearest f64 (for numeric output only).
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // scale down big values to stay in range
    let nf = num.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = den.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

pub fn is_negative(r: &BigRational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_ascending_in_c() {
        let p = MultiPoly::var(Var::C)
            .add(&MultiPoly::monomial(&[(Var::C, 2)], 3))
            .add(&MultiPoly::monomial(&[(Var::C, 3)], 1));
        assert_eq!(p.to_string(), "c + 3*c^2 + c^3");
    }

    #[test]
    fn parse_round_trip() {
        for text in [
            "c + 3*c^2 + c^3",
            "6*c + 17*c^2 + 6*c^3",
            "cprime",
            "2*c*cprime + c",
            "M*Ninv",
            "M^2*Ninv^2 + M*Ninv + M*Ninv^2",
            "-c + 4",
            "0",
        ] {
            let p: MultiPoly = text.parse().unwrap();
            assert_eq!(p.to_string(), text, "round trip of `{text}`");
        }
    }

    #[test]
    fn arithmetic_and_derivative() {
        let c = MultiPoly::var(Var::C);
        let p = c.mul(&c).add(&c); // c^2 + c
        assert_eq!(p.derivative(Var::C).to_string(), "1 + 2*c");
        assert_eq!(p.sub(&p), MultiPoly::zero());
        assert_eq!(p.coeff_c(2), 1);
    }

    #[test]
    fn eval_rationals() {
        let p: MultiPoly = "c + 3*c^2".parse().unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let v = p.eval_c(&half);
        assert_eq!(v, BigRational::new(5.into(), 4.into()));
        assert_eq!(parse_rational("5/4").unwrap(), v);
    }

    #[test]
    fn zero_terms_are_not_stored() {
        let p: MultiPoly = "c".parse().unwrap();
        let q = p.sub(&p);
        assert!(q.is_zero());
        assert_eq!(q.to_string(), "0");
    }
}
