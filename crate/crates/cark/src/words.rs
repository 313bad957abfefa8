//! Words in the S, L generators of PSL2(Z), the (LS)^m (L^2 S)^n normal
//! form, and çark tuple extraction from hyperbolic matrices.

use crate::error::{Error, Result};
use crate::forms::{is_reduced, reduce, rho, Bqf};
use crate::psl2::Psl2Mat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;
use std::fmt;

/// Default bound on the conjugation search in `decompose`.
pub const DEFAULT_CONJ_BOUND: usize = 64;

/// A letter of a freely reduced word in PSL2(Z).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    S,
    L,
    L2,
}

impl Letter {
    pub fn matrix(self) -> Psl2Mat {
        match self {
            Letter::S => Psl2Mat::s_gen(),
            Letter::L => Psl2Mat::l_gen(),
            Letter::L2 => Psl2Mat::l2_gen(),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::S => write!(f, "S"),
            Letter::L => write!(f, "L"),
            Letter::L2 => write!(f, "L2"),
        }
    }
}

/// A freely reduced word over {S, L, L^2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenWord {
    pub letters: Vec<Letter>,
}

impl GenWord {
    pub fn matrix(&self) -> Psl2Mat {
        self.letters
            .iter()
            .fold(Psl2Mat::identity(), |acc, l| acc.mul(&l.matrix()))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// No SS, LL, L2L2, LL2 or L2L adjacencies.
    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| {
            !matches!(
                (w[0], w[1]),
                (Letter::S, Letter::S)
                    | (Letter::L, Letter::L)
                    | (Letter::L, Letter::L2)
                    | (Letter::L2, Letter::L)
                    | (Letter::L2, Letter::L2)
            )
        })
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The cyclic pair sequence (m1, n1, ..., mk, nk). Each pair is (0, 0)
/// padding or has both entries >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CarkTuple {
    pairs: Vec<(BigInt, BigInt)>,
}

impl CarkTuple {
    pub fn new(pairs: Vec<(BigInt, BigInt)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidTuple("tuple is empty".into()));
        }
        let mut any = false;
        for (m, n) in &pairs {
            if m.is_zero() && n.is_zero() {
                continue;
            }
            if !m.is_positive() || !n.is_positive() {
                return Err(Error::InvalidTuple(format!(
                    "pair ({m}, {n}) is neither padding nor strictly positive"
                )));
            }
            any = true;
        }
        if !any {
            return Err(Error::InvalidTuple("all pairs are padding".into()));
        }
        Ok(CarkTuple { pairs })
    }

    pub fn from_i64(pairs: &[(i64, i64)]) -> Result<Self> {
        CarkTuple::new(
            pairs
                .iter()
                .map(|&(m, n)| (BigInt::from(m), BigInt::from(n)))
                .collect(),
        )
    }

    /// Flat list m1, n1, m2, n2, ...
    pub fn from_flat(values: &[BigInt]) -> Result<Self> {
        if values.len() % 2 != 0 {
            return Err(Error::InvalidTuple(format!(
                "need an even number of entries, got {}",
                values.len()
            )));
        }
        CarkTuple::new(
            values
                .chunks(2)
                .map(|c| (c[0].clone(), c[1].clone()))
                .collect(),
        )
    }

    pub fn pairs(&self) -> &[(BigInt, BigInt)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_padding(pair: &(BigInt, BigInt)) -> bool {
        pair.0.is_zero() && pair.1.is_zero()
    }

    /// Tuple with padding pairs removed.
    pub fn strip_padding(&self) -> CarkTuple {
        CarkTuple {
            pairs: self
                .pairs
                .iter()
                .filter(|p| !Self::is_padding(p))
                .cloned()
                .collect(),
        }
    }

    pub fn has_padding(&self) -> bool {
        self.pairs.iter().any(Self::is_padding)
    }

    pub fn rotations(&self) -> Vec<CarkTuple> {
        (0..self.pairs.len())
            .map(|r| {
                let mut pairs = self.pairs[r..].to_vec();
                pairs.extend_from_slice(&self.pairs[..r]);
                CarkTuple { pairs }
            })
            .collect()
    }

    /// Lexicographically least rotation of the pair sequence.
    pub fn canonical(&self) -> CarkTuple {
        self.rotations().into_iter().min().expect("nonempty")
    }

    pub fn rotation_equal(&self, other: &CarkTuple) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }

    /// Sum 2 * sum(m_i + n_i): the letter count of the expanded word.
    pub fn word_length(&self) -> BigInt {
        let s: BigInt = self.pairs.iter().map(|(m, n)| m + n).sum();
        s * 2
    }

    pub fn render(&self) -> String {
        self.pairs
            .iter()
            .flat_map(|(m, n)| [m.to_string(), n.to_string()])
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for CarkTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render())
    }
}

/// M(m, n) = (LS)^m (L^2 S)^n = [[1 + mn, m], [n, 1]]; padding pairs
/// contribute the identity.
pub fn tuple_to_matrix(t: &CarkTuple) -> Psl2Mat {
    let mut acc = Psl2Mat::identity();
    for (m, n) in t.pairs() {
        if m.is_zero() && n.is_zero() {
            continue;
        }
        let block = Psl2Mat::new(
            BigInt::one() + m * n,
            m.clone(),
            n.clone(),
            BigInt::one(),
        );
        acc = acc.mul(&block);
    }
    acc
}

/// Expand to the explicit letter sequence (LS)^m1 (L^2 S)^n1 ...
/// Padding pairs contribute nothing. Counts must fit in usize.
pub fn word_expand(t: &CarkTuple) -> Result<GenWord> {
    let mut letters = Vec::new();
    for (m, n) in t.pairs() {
        if CarkTuple::is_padding(&(m.clone(), n.clone())) {
            continue;
        }
        let mm = usize::try_from(m).map_err(|_| {
            Error::InvalidTuple(format!("entry {m} too large to expand letter by letter"))
        })?;
        let nn = usize::try_from(n).map_err(|_| {
            Error::InvalidTuple(format!("entry {n} too large to expand letter by letter"))
        })?;
        for _ in 0..mm {
            letters.push(Letter::L);
            letters.push(Letter::S);
        }
        for _ in 0..nn {
            letters.push(Letter::L2);
            letters.push(Letter::S);
        }
    }
    Ok(GenWord { letters })
}

/// True unless the pair sequence is a d-fold repetition of a shorter one.
pub fn is_primitive_tuple(t: &CarkTuple) -> bool {
    let pairs = t.pairs();
    let k = pairs.len();
    for d in 2..=k {
        if k % d != 0 {
            continue;
        }
        let period = k / d;
        if (period..k).all(|i| pairs[i] == pairs[i % period]) {
            return false;
        }
    }
    true
}

/// The primitive form (r, s - p, -q) / gcd stabilized by w.
pub fn form_from_automorphism(w: &Psl2Mat) -> Result<Bqf> {
    let sp = &w.s - &w.p;
    if w.r.is_zero() && w.q.is_zero() && sp.is_zero() {
        return Err(Error::ScalarMatrix);
    }
    let delta = w.r.gcd(&sp).gcd(&w.q);
    Ok(Bqf::new(&w.r / &delta, &sp / &delta, -&w.q / &delta))
}

/// Greedy factorization of a nonnegative matrix into runs of T = [[1,1],[0,1]]
/// and U = [[1,0],[1,1]].
fn peel_runs(w: &Psl2Mat) -> Option<Vec<(bool, BigInt)>> {
    // (is_t_run, count)
    if !w.is_nonnegative() {
        return None;
    }
    let mut runs: Vec<(bool, BigInt)> = Vec::new();
    let (mut p, mut q, mut r, mut s) = (w.p.clone(), w.q.clone(), w.r.clone(), w.s.clone());
    loop {
        if q.is_zero() && r.is_zero() {
            // identity
            break;
        }
        if r.is_zero() {
            // [[1, q], [0, 1]] = T^q
            runs.push((true, q.clone()));
            break;
        }
        if q.is_zero() {
            runs.push((false, r.clone()));
            break;
        }
        // both q, r > 0 here (entries nonneg, det 1)
        let top = p >= r && q >= s;
        let bottom = r >= p && s >= q;
        if top {
            let m1 = if r.is_zero() { None } else { Some(&p / &r) };
            let m2 = if s.is_zero() { None } else { Some(&q / &s) };
            let m = match (m1, m2) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => return None,
            };
            if !m.is_positive() {
                return None;
            }
            p -= &m * &r;
            q -= &m * &s;
            runs.push((true, m));
        } else if bottom {
            let n1 = if p.is_zero() { None } else { Some(&r / &p) };
            let n2 = if q.is_zero() { None } else { Some(&s / &q) };
            let n = match (n1, n2) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => return None,
            };
            if !n.is_positive() {
                return None;
            }
            r -= &n * &p;
            s -= &n * &q;
            runs.push((false, n));
        } else {
            return None;
        }
    }
    if runs.is_empty() {
        return None;
    }
    Some(runs)
}

/// Convert a cyclic run sequence into (m, n) pairs, rotating so it starts
/// with a T-run.
fn runs_to_pairs(mut runs: Vec<(bool, BigInt)>) -> Option<Vec<(BigInt, BigInt)>> {
    // merge cyclically adjacent runs of the same letter
    if runs.len() >= 2 && runs.first().map(|r| r.0) == runs.last().map(|r| r.0) {
        let last = runs.pop().expect("len >= 2");
        runs[0].1 += last.1;
    }
    if runs.len() < 2 || runs.len() % 2 != 0 {
        return None;
    }
    // rotate to start with a T-run
    if !runs[0].0 {
        runs.rotate_left(1);
    }
    let mut pairs = Vec::with_capacity(runs.len() / 2);
    for chunk in runs.chunks(2) {
        if !chunk[0].0 || chunk[1].0 {
            return None; // runs fail to alternate T, U
        }
        pairs.push((chunk[0].1.clone(), chunk[1].1.clone()));
    }
    Some(pairs)
}

fn try_peel(w: &Psl2Mat) -> Option<CarkTuple> {
    let runs = peel_runs(w)?;
    let pairs = runs_to_pairs(runs)?;
    CarkTuple::new(pairs).ok().map(|t| t.canonical())
}

/// Bounded breadth-first conjugation by S, L, L^2; fallback for inputs the
/// form-reduction route does not normalize.
fn bfs_decompose(w: &Psl2Mat, bound: usize) -> Option<CarkTuple> {
    let gens = [Psl2Mat::s_gen(), Psl2Mat::l_gen(), Psl2Mat::l2_gen()];
    let mut frontier = vec![w.clone()];
    let mut seen: HashSet<Psl2Mat> = frontier.iter().cloned().collect();
    for _ in 0..bound {
        let mut next = Vec::new();
        for m in &frontier {
            if let Some(t) = try_peel(m) {
                return Some(t);
            }
            for g in &gens {
                let conj = g.inverse().mul(m).mul(g);
                if seen.insert(conj.clone()) {
                    next.push(conj);
                }
            }
        }
        if next.is_empty() || seen.len() > 200_000 {
            return None;
        }
        frontier = next;
    }
    None
}

/// Extract the çark tuple of a hyperbolic matrix conjugate to a positive
/// word: normalize through the reduction cycle of its stabilized form, then
/// peel (LS)- and (L^2 S)-runs.
pub fn decompose(w: &Psl2Mat, conj_bound: usize) -> Result<CarkTuple> {
    if !w.is_hyperbolic() {
        return Err(Error::NotHyperbolic);
    }
    if let Some(t) = try_peel(w) {
        return Ok(finish(w, t));
    }
    let f = form_from_automorphism(w)?;
    let (mut cur, g) = reduce(&f)?;
    debug_assert!(is_reduced(&cur));
    let mut conj = g;
    // walk the full reduction cycle, trying each conjugate
    let start = cur.clone();
    loop {
        let cand = conj.inverse().mul(w).mul(&conj);
        if let Some(t) = try_peel(&cand) {
            return Ok(finish(w, t));
        }
        let (next, step) = rho(&cur);
        conj = conj.mul(&step);
        cur = next;
        if cur == start {
            break;
        }
    }
    match bfs_decompose(w, conj_bound) {
        Some(t) => Ok(finish(w, t)),
        None => Err(Error::NormalizationBound(conj_bound)),
    }
}

fn finish(w: &Psl2Mat, t: CarkTuple) -> CarkTuple {
    debug_assert_eq!(tuple_to_matrix(&t).trace_abs(), w.trace_abs());
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::gamma_act;

    fn tup(pairs: &[(i64, i64)]) -> CarkTuple {
        CarkTuple::from_i64(pairs).unwrap()
    }

    #[test]
    fn tuple_matrix_small() {
        assert_eq!(tuple_to_matrix(&tup(&[(1, 1)])), Psl2Mat::from_i64(2, 1, 1, 1));
        assert_eq!(
            tuple_to_matrix(&tup(&[(4, 1), (2, 1)])),
            Psl2Mat::from_i64(19, 14, 4, 3)
        );
        // padding contributes the identity
        assert_eq!(
            tuple_to_matrix(&tup(&[(4, 1), (0, 0)])),
            tuple_to_matrix(&tup(&[(4, 1)]))
        );
    }

    #[test]
    fn word_expansion() {
        let w = word_expand(&tup(&[(1, 1)])).unwrap();
        assert_eq!(w.letters, vec![Letter::L, Letter::S, Letter::L2, Letter::S]);
        assert!(w.is_reduced());
        assert_eq!(w.matrix(), tuple_to_matrix(&tup(&[(1, 1)])));

        let w = word_expand(&tup(&[(2, 1)])).unwrap();
        assert_eq!(
            w.letters,
            vec![Letter::L, Letter::S, Letter::L, Letter::S, Letter::L2, Letter::S]
        );

        let t = tup(&[(4, 1), (2, 1)]);
        let w = word_expand(&t).unwrap();
        assert_eq!(BigInt::from(w.len()), t.word_length());
        assert_eq!(w.matrix(), tuple_to_matrix(&t));
    }

    #[test]
    fn decompose_worked_example() {
        let w = Psl2Mat::from_i64(11, 30, 4, 11);
        let t = decompose(&w, DEFAULT_CONJ_BOUND).unwrap();
        assert!(t.rotation_equal(&tup(&[(4, 1), (2, 1)])));
    }

    #[test]
    fn decompose_minimal() {
        let w = Psl2Mat::from_i64(2, 1, 1, 1);
        assert_eq!(decompose(&w, DEFAULT_CONJ_BOUND).unwrap(), tup(&[(1, 1)]));
    }

    #[test]
    fn decompose_rejects_elliptic() {
        assert_eq!(
            decompose(&Psl2Mat::s_gen(), DEFAULT_CONJ_BOUND),
            Err(Error::NotHyperbolic)
        );
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive_tuple(&tup(&[(4, 1), (2, 1)])));
        assert!(!is_primitive_tuple(&tup(&[(2, 1), (2, 1)])));
        assert!(is_primitive_tuple(&tup(&[(3, 7)])));
    }

    #[test]
    fn form_recovery() {
        let f = form_from_automorphism(&Psl2Mat::from_i64(11, 30, 4, 11)).unwrap();
        assert_eq!(f, Bqf::from_i64(2, 0, -15));
        let f = form_from_automorphism(&Psl2Mat::from_i64(1, 1, 1, 2)).unwrap();
        assert_eq!(f, Bqf::from_i64(1, 1, -1));
        let f = form_from_automorphism(&Psl2Mat::from_i64(21, 20, 1, 1)).unwrap();
        assert_eq!(f, Bqf::from_i64(1, -20, -20));
        assert_eq!(f.disc(), BigInt::from(480));
        assert!(form_from_automorphism(&Psl2Mat::identity()).is_err());
    }

    #[test]
    fn stabilizer_property() {
        for w in [
            Psl2Mat::from_i64(11, 30, 4, 11),
            Psl2Mat::from_i64(2, 1, 1, 1),
            Psl2Mat::from_i64(21, 20, 1, 1),
        ] {
            let f = form_from_automorphism(&w).unwrap();
            assert_eq!(gamma_act(&w, &f), f);
        }
    }

    #[test]
    fn roundtrip_small_tuples() {
        for pairs in [
            vec![(1, 1)],
            vec![(2, 2)],
            vec![(4, 1), (2, 1)],
            vec![(1, 2), (3, 1)],
            vec![(2, 1), (1, 1), (1, 3)],
        ] {
            let t = tup(&pairs);
            let w = tuple_to_matrix(&t);
            let back = decompose(&w, DEFAULT_CONJ_BOUND).unwrap();
            assert!(back.rotation_equal(&t), "{t} came back as {back}");
        }
    }
}
