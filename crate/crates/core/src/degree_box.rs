use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::IntVector;

/// A finite box `[lo, hi]` of integer degrees, `lo ≤ hi` componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl DegreeBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::InvalidBox(format!(
                "corner lengths differ ({} vs {})",
                lo.len(),
                hi.len()
            )));
        }
        if let Some(i) = (0..lo.len()).find(|&i| lo[i] > hi[i]) {
            return Err(Error::InvalidBox(format!(
                "lo[{i}] = {} exceeds hi[{i}] = {}",
                lo[i], hi[i]
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    /// Parses `"lo..hi"` (applied to every coordinate) or a comma-separated
    /// list of per-coordinate ranges such as `"-2..2,0..1,-1..1"`.
    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        let ranges: Vec<&str> = text.split(',').map(str::trim).collect();
        let parse_range = |r: &str| -> Result<(i64, i64)> {
            let (a, b) = r
                .split_once("..")
                .ok_or_else(|| Error::InvalidBox(format!("expected lo..hi, got {r:?}")))?;
            let a = a
                .trim()
                .parse::<i64>()
                .map_err(|e| Error::InvalidBox(format!("{r:?}: {e}")))?;
            let b = b
                .trim()
                .parse::<i64>()
                .map_err(|e| Error::InvalidBox(format!("{r:?}: {e}")))?;
            Ok((a, b))
        };
        let pairs: Vec<(i64, i64)> = if ranges.len() == 1 {
            vec![parse_range(ranges[0])?; dim]
        } else if ranges.len() == dim {
            ranges.into_iter().map(parse_range).collect::<Result<_>>()?
        } else {
            return Err(Error::InvalidBox(format!(
                "{} ranges given for {dim} coordinates",
                ranges.len()
            )));
        };
        Self::new(
            pairs.iter().map(|p| p.0).collect(),
            pairs.iter().map(|p| p.1).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn len(&self) -> usize {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| (b - a + 1) as usize)
            .product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, c: &[BigInt]) -> bool {
        c.len() == self.dim()
            && c
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (a, b))| *x >= BigInt::from(*a) && *x <= BigInt::from(*b))
    }

    /// All points in lexicographic order.
    pub fn points(&self) -> Vec<IntVector> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = self.lo.clone();
        loop {
            out.push(cur.iter().map(|&x| BigInt::from(x)).collect());
            let mut k = self.dim();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < self.hi[k] {
                    cur[k] += 1;
                    cur[k + 1..].copy_from_slice(&self.lo[k + 1..]);
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_points() {
        let b = DegreeBox::new(vec![0, -1], vec![1, 0]).unwrap();
        let pts: Vec<Vec<i64>> = b
            .points()
            .iter()
            .map(|p| p.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        assert_eq!(pts, vec![vec![0, -1], vec![0, 0], vec![1, -1], vec![1, 0]]);
        assert_eq!(DegreeBox::cube(4, -2, 2).unwrap().points().len(), 625);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(DegreeBox::parse("-2..2", 3).unwrap(), DegreeBox::cube(3, -2, 2).unwrap());
        let b = DegreeBox::parse("-1..1, 0..3", 2).unwrap();
        assert_eq!(b.lo(), &[-1, 0]);
        assert_eq!(b.hi(), &[1, 3]);
        assert!(DegreeBox::parse("2..1", 1).is_err());
        assert!(DegreeBox::parse("0..1,0..1", 3).is_err());
        assert!(DegreeBox::parse("x", 1).is_err());
    }

    #[test]
    fn zero_dimensional_box_has_one_point() {
        let b = DegreeBox::cube(0, 0, 0).unwrap();
        assert_eq!(b.points(), vec![Vec::<BigInt>::new()]);
    }
}
