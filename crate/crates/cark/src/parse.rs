//! Text input formats shared by the CLI and the fuzz targets.

use crate::error::{Error, Result};
use crate::forms::Bqf;
use crate::psl2::Psl2Mat;
use crate::words::CarkTuple;
use num_bigint::BigInt;
use num_traits::One;

/// Comma-separated integer list, e.g. "4,1,2,1" or "2, 0, -15".
pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty integer list".into()));
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad integer {:?}: {e}", part.trim())))
        })
        .collect()
}

/// A çark tuple as the flat list "m1,n1,m2,n2,...".
pub fn parse_tuple(s: &str) -> Result<CarkTuple> {
    CarkTuple::from_flat(&parse_int_list(s)?)
}

/// A binary quadratic form "a,b,c".
pub fn parse_form(s: &str) -> Result<Bqf> {
    let v = parse_int_list(s)?;
    if v.len() != 3 {
        return Err(Error::Parse(format!(
            "a form needs exactly 3 coefficients, got {}",
            v.len()
        )));
    }
    Ok(Bqf::new(v[0].clone(), v[1].clone(), v[2].clone()))
}

/// A PSL2(Z) matrix "p,q,r,s" in row-major order; determinant must be 1.
pub fn parse_matrix(s: &str) -> Result<Psl2Mat> {
    let v = parse_int_list(s)?;
    if v.len() != 4 {
        return Err(Error::Parse(format!(
            "a matrix needs exactly 4 entries, got {}",
            v.len()
        )));
    }
    let det = &v[0] * &v[3] - &v[1] * &v[2];
    if !det.is_one() {
        return Err(Error::Parse(format!("determinant is {det}, not 1")));
    }
    Ok(Psl2Mat::new(
        v[0].clone(),
        v[1].clone(),
        v[2].clone(),
        v[3].clone(),
    ))
}

/// An inclusive range "lo..hi" of small positive integers.
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("range must look like 2..60, got {s:?}")))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad range start: {e}")))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad range end: {e}")))?;
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_lists() {
        assert_eq!(
            parse_int_list("4,1,2,1").unwrap(),
            vec![4, 1, 2, 1].into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
        assert!(parse_int_list("").is_err());
        assert!(parse_int_list("4,,1").is_err());
        assert!(parse_int_list("x").is_err());
    }

    #[test]
    fn tuples() {
        let t = parse_tuple("4,1,2,1").unwrap();
        assert_eq!(t, CarkTuple::from_i64(&[(4, 1), (2, 1)]).unwrap());
        assert!(parse_tuple("4,1,2").is_err()); // odd length
        assert!(parse_tuple("0,0").is_err()); // all padding
        assert!(parse_tuple("1,-1").is_err());
    }

    #[test]
    fn forms() {
        assert_eq!(parse_form("2,0,-15").unwrap(), Bqf::from_i64(2, 0, -15));
        assert!(parse_form("1,2").is_err());
        assert!(parse_form("1,2,3,4").is_err());
    }

    #[test]
    fn matrices() {
        assert_eq!(
            parse_matrix("11,30,4,11").unwrap(),
            Psl2Mat::from_i64(11, 30, 4, 11)
        );
        assert!(parse_matrix("1,2,3,4").is_err()); // det -2
        assert!(parse_matrix("1,0,0").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..60").unwrap(), (2, 60));
        assert_eq!(parse_range("5..5").unwrap(), (5, 5));
        assert!(parse_range("5").is_err());
        assert!(parse_range("a..b").is_err());
    }
}
