//! The four polynomial families A_k, B_k, C_k, D_k obtained by expanding the
//! product M(x_1,y_1)...M(x_k,y_k) in the basis {I, sigma_1, sigma_2, sigma_3},
//! together with the classical Lucas/Fibonacci polynomials they collapse to.

use crate::error::{Error, Result};
use crate::gauss::GaussRat;
use crate::mat::SymMat2;
use crate::poly::{MultiPoly, Var};
use std::collections::BTreeMap;

/// Default cap on k for full symbolic family construction.
pub const DEFAULT_K_CAP: usize = 8;

/// Coefficients of I, sigma_1, sigma_2, sigma_3 for the k-fold product matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliCoeffs {
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub c: MultiPoly,
    pub d: MultiPoly,
    pub k: usize,
}

/// Decompose any symbolic 2x2 matrix in the Pauli basis.
pub fn pauli_decompose(m: &SymMat2) -> PauliCoeffs {
    let half = GaussRat::from_ratio(1, 2);
    let half_i = &half * &GaussRat::i();
    let a = m.m11.add(&m.m22).scale(&half);
    let b = m.m12.add(&m.m21).scale(&half);
    let c = m.m12.sub(&m.m21).scale(&half_i);
    let d = m.m11.sub(&m.m22).scale(&half);
    PauliCoeffs { a, b, c, d, k: 0 }
}

impl PauliCoeffs {
    /// Rebuild the matrix a.I + b.sigma_1 + c.sigma_2 + d.sigma_3.
    pub fn reconstruct(&self) -> SymMat2 {
        let i = GaussRat::i();
        let minus_i = -&i;
        SymMat2::new(
            self.a.add(&self.d),
            self.b.add(&self.c.scale(&minus_i)),
            self.b.add(&self.c.scale(&i)),
            self.a.sub(&self.d),
        )
    }

    /// a^2 - b^2 - c^2 - d^2, which must equal 1.
    pub fn det_identity(&self) -> MultiPoly {
        self.a
            .mul(&self.a)
            .sub(&self.b.mul(&self.b))
            .sub(&self.c.mul(&self.c))
            .sub(&self.d.mul(&self.d))
    }
}

fn check_cap(k: usize, cap: usize) -> Result<()> {
    if k == 0 || k > cap {
        return Err(Error::KCapExceeded(k, cap));
    }
    Ok(())
}

/// The single-pair seed in the variables (x_i, y_i).
fn family_one(i: u32) -> PauliCoeffs {
    let mut p = pauli_decompose(&SymMat2::generator(i));
    p.k = 1;
    p
}

/// Build the families by symbolic matrix multiplication.
pub fn family_direct(k: usize, cap: usize) -> Result<PauliCoeffs> {
    check_cap(k, cap)?;
    let m = SymMat2::generator_product(k as u32);
    let mut p = pauli_decompose(&m);
    p.k = k;
    Ok(p)
}

/// Build the families by the four-term recursion seeded with k = 1.
pub fn family_recursive(k: usize, cap: usize) -> Result<PauliCoeffs> {
    check_cap(k, cap)?;
    let mut cur = family_one(1);
    for next in 2..=k {
        let one = family_one(next as u32);
        let i = GaussRat::i();
        let a = cur
            .a
            .mul(&one.a)
            .add(&cur.b.mul(&one.b))
            .add(&cur.c.mul(&one.c))
            .add(&cur.d.mul(&one.d));
        let b = cur.b.mul(&one.a).add(&cur.a.mul(&one.b)).add(
            &cur.c
                .mul(&one.d)
                .sub(&cur.d.mul(&one.c))
                .scale(&i),
        );
        let c = cur.c.mul(&one.a).add(&cur.a.mul(&one.c)).add(
            &cur.d
                .mul(&one.b)
                .sub(&cur.b.mul(&one.d))
                .scale(&i),
        );
        let d = cur.d.mul(&one.a).add(&cur.a.mul(&one.d)).add(
            &cur.b
                .mul(&one.c)
                .sub(&cur.c.mul(&one.b))
                .scale(&i),
        );
        cur = PauliCoeffs {
            a,
            b,
            c,
            d,
            k: next,
        };
    }
    Ok(cur)
}

/// The 2k-th multivariate Lucas polynomial, 2 A_k.
pub fn multivariate_lucas(k: usize, cap: usize) -> Result<MultiPoly> {
    Ok(family_direct(k, cap)?.a.scale(&GaussRat::from_int(2)))
}

/// The 2k-th multivariate Fibonacci polynomial, B_k.
pub fn multivariate_fibonacci(k: usize, cap: usize) -> Result<MultiPoly> {
    Ok(family_direct(k, cap)?.b)
}

/// Which classical one-variable family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalKind {
    Lucas,
    Fibonacci,
}

/// A classical Lucas or Fibonacci polynomial in the variable x1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalPoly {
    pub kind: ClassicalKind,
    pub n: usize,
    pub poly: MultiPoly,
}

/// L_n or F_n by the footnote recursions, in the variable x1.
pub fn classical_poly(kind: ClassicalKind, n: usize) -> ClassicalPoly {
    let x = MultiPoly::var(Var::x(1));
    let (mut prev, mut cur) = match kind {
        ClassicalKind::Lucas => (MultiPoly::from_int(2), x.clone()),
        ClassicalKind::Fibonacci => (MultiPoly::zero(), MultiPoly::one()),
    };
    let poly = if n == 0 {
        prev
    } else {
        for _ in 1..n {
            let next = x.mul(&cur).add(&prev);
            prev = cur;
            cur = next;
        }
        cur
    };
    ClassicalPoly { kind, n, poly }
}

/// One checked property with its outcome.
#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub name: String,
    pub pass: bool,
}

/// Pass/fail record for the checkable structural properties at a given k.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub k: usize,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Collapse every pair to the common pair (x1, y1).
fn collapse_to_xy(p: &MultiPoly) -> MultiPoly {
    p.rename(|v| if v.is_x() { Var::x(1) } else { Var::y(1) })
}

/// Run the structural property checks for the four families at index k.
pub fn property_suite(k: usize, cap: usize) -> Result<PropertyReport> {
    let fam = family_direct(k, cap)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool| {
        checks.push(PropertyCheck {
            name: name.to_string(),
            pass,
        });
    };

    // (i) constant terms
    push(
        "constant terms: A has 1, B/C/D have none",
        fam.a.constant_term() == GaussRat::from_int(1)
            && fam.b.constant_term().is_zero()
            && fam.c.constant_term().is_zero()
            && fam.d.constant_term().is_zero(),
    );

    // (ii) no pure power x_i^e or y_i^e with e > 1
    let no_pure_powers = |p: &MultiPoly| {
        p.terms().all(|(m, _)| {
            let exps: Vec<_> = m.exponents().collect();
            !(exps.len() == 1 && exps[0].1 > 1)
        })
    };
    push(
        "no pure power terms x_i^e, y_i^e (e > 1)",
        [&fam.a, &fam.b, &fam.c, &fam.d].iter().all(|p| no_pure_powers(p)),
    );

    // (iii) A_k, D_k collapse to monomials x^l y^l only; all even degree
    let balanced = |p: &MultiPoly| {
        collapse_to_xy(p).terms().all(|(m, _)| {
            let dx = m.exponent(Var::x(1));
            let dy = m.exponent(Var::y(1));
            dx == dy && (dx + dy) % 2 == 0
        })
    };
    push("A, D collapse to x^l y^l monomials", balanced(&fam.a) && balanced(&fam.d));

    // (iv) B_k, C_k collapse to x^l y^(l+1) / x^(l+1) y^l shapes with equal
    // counts per degree; all odd degree
    let off_balanced = |p: &MultiPoly| {
        let q = collapse_to_xy(p);
        let mut lo = BTreeMap::new();
        let mut hi = BTreeMap::new();
        for (m, _) in q.terms() {
            let dx = m.exponent(Var::x(1));
            let dy = m.exponent(Var::y(1));
            if (dx + dy) % 2 == 0 {
                return false;
            }
            if dy == dx + 1 {
                *lo.entry(dx).or_insert(0u32) += 1;
            } else if dx == dy + 1 {
                *hi.entry(dy).or_insert(0u32) += 1;
            } else {
                return false;
            }
        }
        lo == hi
    };
    push(
        "B, C collapse to x^l y^(l+1) / x^(l+1) y^l with balanced counts",
        off_balanced(&fam.b) && off_balanced(&fam.c),
    );

    // (v) degrees
    push(
        "deg A = deg D = 2k, deg B = deg C = 2k - 1",
        fam.a.degree() as usize == 2 * k
            && fam.d.degree() as usize == 2 * k
            && fam.b.degree() as usize == 2 * k - 1
            && fam.c.degree() as usize == 2 * k - 1,
    );

    // (vi) integrality of the doubled families
    let two = GaussRat::from_int(2);
    let two_over_i = &two * &GaussRat::i().inv();
    push(
        "2A, 2B, (2/i)C, 2D have integer coefficients",
        fam.a.scale(&two).has_integer_coeffs()
            && fam.b.scale(&two).has_integer_coeffs()
            && fam.c.scale(&two_over_i).has_integer_coeffs()
            && fam.d.scale(&two).has_integer_coeffs(),
    );

    Ok(PropertyReport { k, checks })
}
