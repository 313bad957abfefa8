//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Variables come in indexed pairs x_i, y_i for i >= 1. The monomial order is
//! graded lexicographic with x1 < y1 < x2 < y2 < ...; rendering walks terms in
//! descending order so the leading term prints first.

use crate::error::{Error, Result};
use crate::gauss::GaussRat;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// One of the two variables of the i-th pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn x(i: u32) -> Self {
        assert!(i >= 1, "pair indices start at 1");
        Var(2 * (i - 1))
    }

    pub fn y(i: u32) -> Self {
        assert!(i >= 1, "pair indices start at 1");
        Var(2 * (i - 1) + 1)
    }

    pub fn pair(self) -> u32 {
        self.0 / 2 + 1
    }

    pub fn is_x(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn name(self) -> String {
        if self.is_x() {
            format!("x{}", self.pair())
        } else {
            format!("y{}", self.pair())
        }
    }

    pub fn latex(self) -> String {
        if self.is_x() {
            format!("x_{{{}}}", self.pair())
        } else {
            format!("y_{{{}}}", self.pair())
        }
    }
}

/// A power product; the empty map is the constant monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<Var, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        let mut exps = BTreeMap::new();
        exps.insert(v, 1);
        Monomial { exps }
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut exps = BTreeMap::new();
        for &(v, e) in pairs {
            if e > 0 {
                *exps.entry(v).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exps.iter().map(|(&v, &e)| (v, e))
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (&v, &e) in &other.exps {
            *exps.entry(v).or_insert(0) += e;
        }
        Monomial { exps }
    }

    /// Apply a variable substitution var -> var (merging exponents).
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Monomial {
        let mut exps = BTreeMap::new();
        for (&v, &e) in &self.exps {
            *exps.entry(f(v)).or_insert(0) += e;
        }
        Monomial { exps }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // lexicographic on the exponent vectors over the ascending variable
        // order; higher power of an earlier variable ranks higher
        let vars: BTreeSet<Var> = self
            .exps
            .keys()
            .chain(other.exps.keys())
            .copied()
            .collect();
        for v in vars {
            match self.exponent(v).cmp(&other.exponent(v)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// A sparse polynomial in canonical form: no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn one() -> Self {
        MultiPoly::constant(GaussRat::from_int(1))
    }

    pub fn from_int(n: i64) -> Self {
        MultiPoly::constant(GaussRat::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), GaussRat::from_int(1));
        MultiPoly { terms }
    }

    pub fn monomial(m: Monomial, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussRat {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| GaussRat::from_int(0))
    }

    pub fn constant_term(&self) -> GaussRat {
        self.coefficient(&Monomial::one())
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Largest pair index appearing in the polynomial.
    pub fn arity(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().map(|(v, _)| v.pair()))
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().map(|(v, _)| v))
            .collect()
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, GaussRat>, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), c.clone());
        }
        MultiPoly { terms }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                Self::insert_term(&mut terms, m1.mul(m2), c1 * c2);
            }
        }
        MultiPoly { terms }
    }

    pub fn scale(&self, c: &GaussRat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Exact evaluation; errors on the first variable not covered by the
    /// assignment.
    pub fn eval(&self, assignment: &BTreeMap<Var, GaussRat>) -> Result<GaussRat> {
        for v in self.variables() {
            if !assignment.contains_key(&v) {
                return Err(Error::MissingVariable(v.name()));
            }
        }
        let mut acc = GaussRat::from_int(0);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.exponents() {
                let val = &assignment[&v];
                for _ in 0..e {
                    t = &t * val;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitute every variable by the single target variable.
    pub fn collapse(&self, to: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out = out.add(&MultiPoly::monomial(m.rename(|_| to), c.clone()));
        }
        out
    }

    /// Substitute one variable by a constant.
    pub fn subst(&self, v: Var, value: &GaussRat) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                out = out.add(&MultiPoly::monomial(m.clone(), c.clone()));
                continue;
            }
            if value.is_zero() {
                continue;
            }
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff = &coeff * value;
            }
            let rest =
                Monomial::from_pairs(&m.exponents().filter(|&(w, _)| w != v).collect::<Vec<_>>());
            out = out.add(&MultiPoly::monomial(rest, coeff));
        }
        out
    }

    /// Rename variables through an arbitrary map; exponents of variables sent
    /// to a common target merge.
    pub fn rename(&self, f: impl Fn(Var) -> Var + Copy) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out = out.add(&MultiPoly::monomial(m.rename(f), c.clone()));
        }
        out
    }

    /// True when every coefficient is a (real) integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_real() && c.is_integral())
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    if m.is_constant() {
        return "1".to_string();
    }
    m.exponents()
        .map(|(v, e)| {
            if e == 1 {
                v.name()
            } else {
                format!("{}^{}", v.name(), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn latex_monomial(m: &Monomial) -> String {
    if m.is_constant() {
        return "1".to_string();
    }
    m.exponents()
        .map(|(v, e)| {
            if e == 1 {
                v.latex()
            } else {
                format!("{}^{{{}}}", v.latex(), e)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_monomial(self))
    }
}


fn coeff_is_negative(c: &GaussRat) -> bool {
    use num_traits::Zero as _;
    if c.im.is_zero() {
        c.re < num_rational::BigRational::zero()
    } else if c.re.is_zero() {
        c.im < num_rational::BigRational::zero()
    } else {
        false
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

impl MultiPoly {
    /// Canonical text form: terms in descending monomial order.
    pub fn render_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if coeff_is_negative(c) {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_constant() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&fmt_monomial(m));
            } else {
                out.push_str(&format!("{}*{}", mag, fmt_monomial(m)));
            }
        }
        out
    }

    pub fn render_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if coeff_is_negative(c) {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if mag.is_real() {
                if mag.re.is_integer() {
                    mag.re.numer().to_string()
                } else {
                    format!("\\frac{{{}}}{{{}}}", mag.re.numer(), mag.re.denom())
                }
            } else if mag.re.is_zero() {
                if mag.im.is_integer() {
                    format!("{}\\sqrt{{-1}}", mag.im.numer())
                } else {
                    format!(
                        "\\frac{{{}}}{{{}}}\\sqrt{{-1}}",
                        mag.im.numer(),
                        mag.im.denom()
                    )
                }
            } else {
                format!("({})", mag)
            };
            if m.is_constant() {
                out.push_str(&coeff);
            } else if coeff == "1" {
                out.push_str(&latex_monomial(m));
            } else {
                out.push_str(&format!("{} {}", coeff, latex_monomial(m)));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let (re, im) = c.to_strings();
                JsonTerm {
                    exponents: m.exponents().map(|(v, e)| (v.name(), e)).collect(),
                    re,
                    im,
                }
            })
            .collect();
        serde_json::to_value(terms).expect("serializable")
    }
}

/// JSON rendering of a single term.
#[derive(Serialize, Deserialize)]
pub struct JsonTerm {
    pub exponents: BTreeMap<String, u32>,
    pub re: String,
    pub im: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> MultiPoly {
        MultiPoly::var(Var::x(i))
    }
    fn y(i: u32) -> MultiPoly {
        MultiPoly::var(Var::y(i))
    }

    #[test]
    fn difference_of_squares() {
        let p = x(1).add(&y(1));
        let q = x(1).sub(&y(1));
        let expect = x(1).mul(&x(1)).sub(&y(1).mul(&y(1)));
        assert_eq!(p.mul(&q), expect);
    }

    #[test]
    fn additive_identity() {
        let p = x(1).mul(&y(2)).add(&MultiPoly::from_int(3));
        assert_eq!(p.add(&MultiPoly::zero()), p);
    }

    #[test]
    fn scalar_inverse() {
        let half = GaussRat::from_ratio(1, 2);
        let p = x(1).scale(&half);
        assert_eq!(p.scale(&GaussRat::from_int(2)), x(1));
    }

    #[test]
    fn eval_missing_variable() {
        let p = x(1).add(&y(1));
        let mut assign = BTreeMap::new();
        assign.insert(Var::x(1), GaussRat::from_int(1));
        assert_eq!(p.eval(&assign), Err(Error::MissingVariable("y1".into())));
    }

    #[test]
    fn eval_at_zero_gives_constant_term() {
        let p = x(1).mul(&y(2)).add(&MultiPoly::from_int(5));
        let mut assign = BTreeMap::new();
        for v in p.variables() {
            assign.insert(v, GaussRat::from_int(0));
        }
        assert_eq!(p.eval(&assign).unwrap(), GaussRat::from_int(5));
    }

    #[test]
    fn collapse_substitution() {
        // x1*y2 + x2 -> x^2 + x
        let p = x(1).mul(&y(2)).add(&x(2));
        let t = Var::x(1);
        let expect = x(1).mul(&x(1)).add(&x(1));
        assert_eq!(p.collapse(t), expect);
    }

    #[test]
    fn render_canonical() {
        let p = x(1).mul(&y(1)).add(&MultiPoly::from_int(2));
        assert_eq!(p.render_text(), "x1*y1 + 2");
    }
}
