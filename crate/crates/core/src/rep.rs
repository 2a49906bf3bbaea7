//! Exterior powers `Λ^k` of the standard representation and the embedding
//! data attached to a stratum.
//!
//! The basis of `Λ^k` is `e_S = e_{s_1} ∧ ... ∧ e_{s_k}` over `k`-subsets `S`
//! in colexicographic order, so the highest weight vector `e_1 ∧ ... ∧ e_k`
//! comes first. The matrix of `g` is the `k`-th compound matrix.

use num_traits::{One, Zero};

use crate::group::GroupMatrix;
use crate::linalg::{k_subsets, QMat};
use crate::rational::Rational;
use crate::weyl::Parabolic;
use crate::{Error, Result};

/// `Λ^k` of `C^n`; `k = 0` is the trivial representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FundamentalRep {
    pub n: usize,
    pub k: usize,
}

impl FundamentalRep {
    pub fn dim(&self) -> usize {
        k_subsets(self.n, self.k).len()
    }

    /// One-based basis labels.
    pub fn basis(&self) -> Vec<Vec<usize>> {
        k_subsets(self.n, self.k).into_iter().map(|s| s.into_iter().map(|i| i + 1).collect()).collect()
    }

    pub fn matrix(&self, g: &GroupMatrix) -> QMat {
        compound(g.mat(), self.k)
    }
}

pub fn compound(g: &QMat, k: usize) -> QMat {
    g.compound(k)
}

/// Diagonal projector of `Λ^k` onto the weight vectors `e_S` whose weight
/// differs from the highest one by roots of `J` only, i.e. `S` meets every
/// `J`-block in as many elements as `{1..k}` does.
pub fn levi_projector(n: usize, k: usize, j: &Parabolic) -> QMat {
    let block = j.block_of();
    let nblocks = j.blocks().len();
    let profile = |s: &[usize]| {
        let mut c = vec![0usize; nblocks];
        for &i in s {
            c[block[i]] += 1;
        }
        c
    };
    let top = profile(&(0..k).collect::<Vec<_>>());
    let diag: Vec<Rational> = k_subsets(n, k)
        .iter()
        .map(|s| if profile(s) == top { Rational::one() } else { Rational::zero() })
        .collect();
    QMat::diagonal(&diag)
}

/// The pair of representations used to embed the stratum `Z_J`.
#[derive(Clone, Debug)]
pub struct EmbeddingData {
    pub j: Parabolic,
    pub rep1: FundamentalRep,
    pub rep2: FundamentalRep,
    pub i1: QMat,
    pub il: QMat,
    pub n0: usize,
    /// Whether both highest weights have exactly the required support, so
    /// the entrywise positivity test applies.
    pub exact: bool,
}

impl EmbeddingData {
    /// `λ1 = ω_k` for `I - J = {k}` (trivial when `J = I`) and `λ2 = ω_j`
    /// for `J = {j}` (trivial when `J = ∅`). For `J = I` with `n ≥ 3` no
    /// fundamental weight has full support; `Λ^1` is used and the data is
    /// marked inexact.
    pub fn new(j: &Parabolic) -> Result<Self> {
        let n = j.n();
        let comp = j.complement();
        let k1 = match comp.as_slice() {
            [] => 0,
            [k] => *k,
            _ => return Err(Error::UnsupportedStratum(format!("J = {j} needs a non-fundamental weight on {comp:?}"))),
        };
        let (k2, exact) = match j.members() {
            [] => (0, true),
            [k] => (*k, true),
            _ if j.is_full() => (1, false),
            m => return Err(Error::UnsupportedStratum(format!("J = {j} needs a non-fundamental weight on {m:?}"))),
        };
        let rep1 = FundamentalRep { n, k: k1 };
        let rep2 = FundamentalRep { n, k: k2 };
        let i1 = levi_projector(n, k1, j);
        let il = levi_projector(n, k2, j);
        debug_assert_eq!(i1.entries().filter(|x| x.is_one()).count(), 1);
        let n0 = il.entries().filter(|x| x.is_one()).count();
        Ok(EmbeddingData { j: j.clone(), rep1, rep2, i1, il, n0, exact })
    }

    /// `i_J(g) = (ρ1(g), ρ2(g))`, each up to scalar.
    pub fn of_group_element(&self, g: &GroupMatrix) -> (QMat, QMat) {
        (self.rep1.matrix(g), self.rep2.matrix(g))
    }
}

/// Whether `a = c·b` for some nonzero scalar `c`.
pub fn proportional(a: &QMat, b: &QMat) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let Some((x, y)) = a.entries().zip(b.entries()).find(|(x, y)| !x.is_zero() || !y.is_zero()) else {
        return true;
    };
    if x.is_zero() || y.is_zero() {
        return false;
    }
    let c = x / y;
    a.entries().zip(b.entries()).all(|(x, y)| *x == &c * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn par(n: usize, m: &[usize]) -> Parabolic {
        Parabolic::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn compound_examples() {
        assert_eq!(compound(&QMat::identity(3), 2), QMat::identity(3));
        // basis e12, e13, e23; x_1(a) sends e2∧e3 to e2∧e3 + a e1∧e3
        let x = GroupMatrix::x(3, 1, int(5)).unwrap();
        let c = compound(x.mat(), 2);
        assert_eq!(c.column(0), vec![int(1), int(0), int(0)]);
        assert_eq!(c.column(1), vec![int(0), int(1), int(0)]);
        assert_eq!(c.column(2), vec![int(0), int(5), int(1)]);
        let g = QMat::from_i64(&[&[1, 1], &[1, 2]]);
        assert_eq!(compound(&g, 2), QMat::from_i64(&[&[1]]));
        assert_eq!(compound(&g, 0), QMat::from_i64(&[&[1]]));
        assert_eq!(FundamentalRep { n: 3, k: 2 }.basis(), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn embedding_examples() {
        let d = EmbeddingData::new(&par(3, &[1])).unwrap();
        assert_eq!(d.rep1.k, 2);
        assert_eq!(d.rep2.k, 1);
        assert_eq!(d.il, QMat::diagonal(&[int(1), int(1), int(0)]));
        assert_eq!(d.n0, 2);
        assert_eq!(d.i1, QMat::diagonal(&[int(1), int(0), int(0)]));
        assert!(d.exact);

        let d = EmbeddingData::new(&par(2, &[])).unwrap();
        assert_eq!((d.rep1.k, d.rep2.k), (1, 0));
        assert_eq!(d.il, QMat::identity(1));

        let d = EmbeddingData::new(&Parabolic::full(3)).unwrap();
        assert_eq!((d.rep1.k, d.rep2.k), (0, 1));
        assert_eq!(d.il, QMat::identity(3));
        assert_eq!(d.n0, 3);
        assert!(!d.exact);

        assert!(matches!(EmbeddingData::new(&par(3, &[])), Err(Error::UnsupportedStratum(_))));
        assert!(matches!(EmbeddingData::new(&par(4, &[1, 2])), Err(Error::UnsupportedStratum(_))));
    }

    #[test]
    fn embedding_of_group_elements() {
        let d = EmbeddingData::new(&par(2, &[])).unwrap();
        let id = GroupMatrix::identity(2);
        let (a, b) = d.of_group_element(&id);
        assert_eq!((a, b), (QMat::identity(2), QMat::identity(1)));
        let g = GroupMatrix::new(QMat::from_i64(&[&[1, 1], &[1, 2]])).unwrap();
        let (a, b) = d.of_group_element(&g);
        assert_eq!(a, g.mat().clone());
        assert_eq!(b, QMat::identity(1));
    }

    #[test]
    fn projector_counts_match_weight_count() {
        // n0 counts weights λ2 - Σ_{j∈J} a_j α_j; for Λ^1 with J = {j} these are ε_j and ε_{j+1}
        for n in 2..=5 {
            for j in 1..n {
                let p = levi_projector(n, j, &par(n, &[j]));
                assert_eq!(p.entries().filter(|x| x.is_one()).count(), 2);
                let p = levi_projector(n, 1, &par(n, &[j]));
                assert_eq!(p.entries().filter(|x| x.is_one()).count(), if j == 1 { 2 } else { 1 });
            }
        }
    }

    #[test]
    fn proportional_detects_scalars() {
        let a = QMat::from_i64(&[&[1, 2], &[0, 3]]);
        assert!(proportional(&a, &a.scale(&int(-4))));
        assert!(!proportional(&a, &QMat::identity(2)));
    }
}
