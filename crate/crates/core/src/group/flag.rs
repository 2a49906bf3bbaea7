//! Borel and parabolic subgroups as (partial) flags of subspaces.
//!
//! `^gB^+` is the stabilizer of the flag spanned by the leading columns of
//! `g`. A parabolic of type `J` stabilizes the partial flag cut at the block
//! boundaries of `J`; `^bQ_J` stabilizes the flag spanned by the trailing
//! columns of `b`, cut at the reversed boundaries, and therefore has type `J*`.

use num_traits::Zero;

use super::GroupMatrix;
use crate::linalg::QMat;
use crate::rational::Rational;
use crate::weyl::{Parabolic, WeylElement};
use crate::{Error, Result};

/// Spans of the leading `dims[k]` columns of `basis`.
#[derive(Clone, Debug)]
pub struct PartialFlag {
    basis: QMat,
    dims: Vec<usize>,
}

impl PartialFlag {
    pub fn new(basis: QMat, dims: Vec<usize>) -> Self {
        PartialFlag { basis, dims }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n(&self) -> usize {
        self.basis.rows()
    }

    /// Spanning columns of the `k`-th subspace.
    pub fn subspace(&self, k: usize) -> QMat {
        let cols: Vec<usize> = (0..self.dims[k]).collect();
        self.basis.select_columns(&cols)
    }

    fn subspace_of_dim(&self, d: usize) -> QMat {
        let cols: Vec<usize> = (0..d).collect();
        self.basis.select_columns(&cols)
    }
}

impl PartialEq for PartialFlag {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims
            && (0..self.dims.len()).all(|k| same_span(&self.subspace(k), &other.subspace(k)))
    }
}

fn same_span(a: &QMat, b: &QMat) -> bool {
    let r = a.rank();
    r == b.rank() && a.hconcat(b).rank() == r
}

/// Basis (as columns) of the intersection of two column spans.
fn intersect(a: &QMat, b: &QMat) -> Vec<Vec<Rational>> {
    if a.cols() == 0 || b.cols() == 0 {
        return Vec::new();
    }
    let neg_b = b.map(|x| -x.clone());
    a.hconcat(&neg_b)
        .null_space()
        .into_iter()
        .map(|v| {
            let alpha = QMat::from_columns(a.cols(), &[v[..a.cols()].to_vec()]);
            (a * &alpha).column(0)
        })
        .collect()
}

/// Complete flag `^gB^+`.
#[derive(Clone, Debug)]
pub struct FlagPoint {
    conj: GroupMatrix,
}

impl FlagPoint {
    pub fn new(conj: GroupMatrix) -> Self {
        FlagPoint { conj }
    }

    /// `B^+`.
    pub fn standard(n: usize) -> Self {
        FlagPoint { conj: GroupMatrix::identity(n) }
    }

    /// `B^- = ^{ẇ_0}B^+`.
    pub fn opposite(n: usize) -> Self {
        FlagPoint { conj: GroupMatrix::wdot(&WeylElement::longest(n)) }
    }

    pub fn conj(&self) -> &GroupMatrix {
        &self.conj
    }

    pub fn act(&self, g: &GroupMatrix) -> Self {
        FlagPoint { conj: g.mul(&self.conj) }
    }

    pub fn as_partial(&self) -> PartialFlag {
        PartialFlag::new(self.conj.mat().clone(), (1..self.conj.n()).collect())
    }
}

impl PartialEq for FlagPoint {
    fn eq(&self, other: &Self) -> bool {
        let h = self.conj.inverse().mul(&other.conj);
        let m = h.mat();
        (0..m.rows()).all(|r| (0..r).all(|c| m[(r, c)].is_zero()))
    }
}

/// `pos(B_1, B_2)`, the Bruhat cell of `g_1^{-1} g_2`.
pub fn position(b1: &FlagPoint, b2: &FlagPoint) -> WeylElement {
    b1.conj.inverse().mul(&b2.conj).bruhat_cell()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `^aP_J`, type `J`.
    Standard,
    /// `^bQ_J`, type `J*`.
    Opposite,
}

#[derive(Clone, Debug)]
pub struct ParabolicPoint {
    pub j: Parabolic,
    pub conj: GroupMatrix,
    pub side: Side,
}

impl ParabolicPoint {
    pub fn standard(j: Parabolic, a: GroupMatrix) -> Self {
        ParabolicPoint { j, conj: a, side: Side::Standard }
    }

    pub fn opposite(j: Parabolic, b: GroupMatrix) -> Self {
        ParabolicPoint { j, conj: b, side: Side::Opposite }
    }

    /// The conjugacy type: `J` for `^aP_J`, `J*` for `^bQ_J`.
    pub fn kind(&self) -> Parabolic {
        match self.side {
            Side::Standard => self.j.clone(),
            Side::Opposite => self.j.star(),
        }
    }

    pub fn act(&self, g: &GroupMatrix) -> Self {
        ParabolicPoint { j: self.j.clone(), conj: g.mul(&self.conj), side: self.side }
    }

    pub fn partial_flag(&self) -> PartialFlag {
        let n = self.j.n();
        let m = self.conj.mat();
        let (basis, sizes) = match self.side {
            Side::Standard => (m.clone(), self.j.blocks().iter().map(|b| b.len()).collect::<Vec<_>>()),
            Side::Opposite => {
                let cols: Vec<usize> = (0..n).rev().collect();
                (m.select_columns(&cols), self.j.blocks().iter().rev().map(|b| b.len()).collect())
            }
        };
        let mut dims = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for s in &sizes[..sizes.len() - 1] {
            acc += s;
            dims.push(acc);
        }
        PartialFlag::new(basis, dims)
    }
}

impl PartialEq for ParabolicPoint {
    fn eq(&self, other: &Self) -> bool {
        self.kind() == other.kind() && self.partial_flag() == other.partial_flag()
    }
}

/// `P^B`: the Borel in `P` in minimal relative position to `B`, obtained by
/// refining the partial flag of `P` with the full flag of `B`.
pub fn associated_borel(p: &ParabolicPoint, b: &FlagPoint) -> FlagPoint {
    let pf = p.partial_flag();
    let n = pf.n();
    let bm = b.conj.mat();
    let mut dims = vec![0];
    dims.extend_from_slice(pf.dims());
    dims.push(n);
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for step in 1..dims.len() {
        let vk = pf.subspace_of_dim(dims[step]);
        for j in 1..=n {
            if cols.len() == dims[step] {
                break;
            }
            let ej = bm.select_columns(&(0..j).collect::<Vec<_>>());
            for v in intersect(&ej, &vk) {
                let mut trial = cols.clone();
                trial.push(v);
                if QMat::from_columns(n, &trial).rank() == trial.len() {
                    cols = trial;
                    break;
                }
            }
        }
    }
    FlagPoint::new(GroupMatrix::normalize(QMat::from_columns(n, &cols)).expect("refined basis is independent"))
}

/// Whether `P` (type `J`) and `Q` (type `J*`) are opposed: every step of
/// one flag meets the complementary step of the other trivially.
pub fn opposed(p: &ParabolicPoint, q: &ParabolicPoint) -> Result<bool> {
    if q.kind() != p.kind().star() {
        return Err(Error::TypeMismatch(format!("{} is not the dual type of {}", q.kind(), p.kind())));
    }
    let (pf, qf) = (p.partial_flag(), q.partial_flag());
    let n = pf.n();
    Ok(pf.dims().iter().all(|&m| pf.subspace_of_dim(m).hconcat(&qf.subspace_of_dim(n - m)).rank() == n))
}
