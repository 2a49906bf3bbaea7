//! `SL_n` matrices standing for elements of the adjoint group, with the
//! standard pinning, Gaussian factorizations and Bruhat cells.

mod flag;

pub use flag::{associated_borel, opposed, position, FlagPoint, ParabolicPoint, PartialFlag, Side};

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::QMat;
use crate::rational::{int, Rational};
use crate::weyl::{Parabolic, WeylElement};
use crate::{Error, Result};

/// Determinant-one rational matrix; equality is up to the scalars `±1`
/// that have determinant one.
#[derive(Clone)]
pub struct GroupMatrix(QMat);

impl GroupMatrix {
    pub fn new(m: QMat) -> Result<Self> {
        if !m.is_square() || m.det() != Rational::one() {
            return Err(Error::Schema("group elements must be square with determinant 1".into()));
        }
        Ok(GroupMatrix(m))
    }

    /// Rescales the first column so the determinant becomes one.
    pub fn normalize(mut m: QMat) -> Result<Self> {
        let d = m.det();
        if d.is_zero() {
            return Err(Error::Schema("singular matrix".into()));
        }
        for r in 0..m.rows() {
            m[(r, 0)] /= &d;
        }
        Ok(GroupMatrix(m))
    }

    pub fn identity(n: usize) -> Self {
        GroupMatrix(QMat::identity(n))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn mat(&self) -> &QMat {
        &self.0
    }

    pub fn into_mat(self) -> QMat {
        self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        GroupMatrix(&self.0 * &other.0)
    }

    pub fn inverse(&self) -> Self {
        GroupMatrix(self.0.inverse().expect("determinant one"))
    }

    /// `ψ`, realized as the transpose.
    pub fn psi(&self) -> Self {
        GroupMatrix(self.0.transpose())
    }

    /// Sign-normalized representative: first nonzero entry positive when
    /// `-1` has determinant one.
    pub fn canonical(&self) -> QMat {
        let first_negative = self.0.entries().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
        if self.n().is_multiple_of(2) && first_negative {
            self.0.map(|x| -x.clone())
        } else {
            self.0.clone()
        }
    }

    /// `x_i(a) = I + a E_{i,i+1}`.
    pub fn x(n: usize, i: usize, a: Rational) -> Result<Self> {
        check(n, i)?;
        let mut m = QMat::identity(n);
        m[(i - 1, i)] = a;
        Ok(GroupMatrix(m))
    }

    /// `y_i(a) = I + a E_{i+1,i}`.
    pub fn y(n: usize, i: usize, a: Rational) -> Result<Self> {
        check(n, i)?;
        let mut m = QMat::identity(n);
        m[(i, i - 1)] = a;
        Ok(GroupMatrix(m))
    }

    /// `ṡ_i = x_i(-1) y_i(1) x_i(-1)`.
    pub fn sdot(n: usize, i: usize) -> Result<Self> {
        let xm = Self::x(n, i, int(-1))?;
        Ok(xm.mul(&Self::y(n, i, int(1))?).mul(&xm))
    }

    /// `ẇ` as the product of `ṡ_i` along the lex-least reduced word.
    pub fn wdot(w: &WeylElement) -> Self {
        let n = w.n();
        w.reduced_word()
            .letters()
            .iter()
            .fold(Self::identity(n), |acc, &i| acc.mul(&Self::sdot(n, i).unwrap()))
    }

    /// Coroot `α_i^∨(c) = diag(.., c, 1/c, ..)` at positions `i, i+1`.
    pub fn coroot(n: usize, i: usize, c: &Rational) -> Result<Self> {
        check(n, i)?;
        if c.is_zero() {
            return Err(Error::ZeroTorusCoordinate(i));
        }
        let mut m = QMat::identity(n);
        m[(i - 1, i - 1)] = c.clone();
        m[(i, i)] = c.recip();
        Ok(GroupMatrix(m))
    }

    /// `∏_i α_i^∨(c_i)` for one value per simple coroot.
    pub fn torus(n: usize, values: &[Rational]) -> Result<Self> {
        if values.len() + 1 != n {
            return Err(Error::LengthMismatch { expected: n - 1, got: values.len() });
        }
        let mut acc = Self::identity(n);
        for (k, c) in values.iter().enumerate() {
            acc = acc.mul(&Self::coroot(n, k + 1, c)?);
        }
        Ok(acc)
    }

    /// Diagonal determinant-one matrix with the given entries.
    pub fn diagonal(values: &[Rational]) -> Result<Self> {
        if let Some(k) = values.iter().position(Zero::is_zero) {
            return Err(Error::ZeroTorusCoordinate(k + 1));
        }
        Self::new(QMat::diagonal(values))
    }

    pub fn ldu(&self) -> Result<(Self, Vec<Rational>, Self)> {
        let (l, d, u) = ldu(&self.0)?;
        Ok((GroupMatrix(l), d, GroupMatrix(u)))
    }

    /// `π_T`.
    pub fn pi_t(&self) -> Result<Self> {
        let (_, d, _) = ldu(&self.0)?;
        Ok(GroupMatrix(QMat::diagonal(&d)))
    }

    /// `π_{U^+}`.
    pub fn pi_uplus(&self) -> Result<Self> {
        Ok(GroupMatrix(ldu(&self.0)?.2))
    }

    /// `π_{U^-}`.
    pub fn pi_uminus(&self) -> Result<Self> {
        Ok(GroupMatrix(ldu(&self.0)?.0))
    }

    /// `π_{U^+_J}`: the `J`-block diagonal part of the upper factor.
    pub fn pi_uplus_j(&self, j: &Parabolic) -> Result<Self> {
        Ok(GroupMatrix(block_diagonal_part(&ldu(&self.0)?.2, j)))
    }

    /// `π_{U^-_J}` on `U^-`: the `J`-block diagonal part.
    pub fn pi_uminus_j(&self, j: &Parabolic) -> Result<Self> {
        Ok(GroupMatrix(block_diagonal_part(&ldu(&self.0)?.0, j)))
    }

    /// The `w` with `g ∈ B^+ ẇ B^+`.
    pub fn bruhat_cell(&self) -> WeylElement {
        bruhat_cell(&self.0)
    }

    /// All minors of every order strictly positive.
    pub fn is_totally_positive(&self) -> bool {
        minors_positive(&self.0)
    }

    pub fn is_totally_nonnegative(&self) -> bool {
        minors_nonnegative(&self.0)
    }
}

impl PartialEq for GroupMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.canonical() == other.canonical()
    }
}

impl fmt::Debug for GroupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            self.0.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        write!(f, "{rows:?}")
    }
}

fn check(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        Err(Error::IndexOutOfRange { index: i, n })
    } else {
        Ok(())
    }
}

/// `g = u⁻ · diag(d) · u⁺`; exists iff every leading principal minor of `g`
/// is nonzero.
pub fn ldu(g: &QMat) -> Result<(QMat, Vec<Rational>, QMat)> {
    let n = g.rows();
    let mut lower = QMat::identity(n);
    let mut upper = QMat::identity(n);
    let mut d = vec![Rational::zero(); n];
    let mut a = g.clone();
    for k in 0..n {
        let p = a[(k, k)].clone();
        if p.is_zero() {
            return Err(Error::NotInBigCell(k + 1));
        }
        for r in k + 1..n {
            lower[(r, k)] = &a[(r, k)] / &p;
        }
        for c in k + 1..n {
            upper[(k, c)] = &a[(k, c)] / &p;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let v = &lower[(r, k)] * &a[(k, c)];
                a[(r, c)] -= v;
            }
        }
        d[k] = p;
    }
    Ok((lower, d, upper))
}

/// Keeps the entries inside the diagonal `J`-blocks.
pub fn block_diagonal_part(m: &QMat, j: &Parabolic) -> QMat {
    let block = j.block_of();
    QMat::from_fn(m.rows(), m.cols(), |r, c| if block[r] == block[c] { m[(r, c)].clone() } else { Rational::zero() })
}

pub fn is_block_diagonal(m: &QMat, j: &Parabolic) -> bool {
    let block = j.block_of();
    (0..m.rows()).all(|r| (0..m.cols()).all(|c| block[r] == block[c] || m[(r, c)].is_zero()))
}

/// Block upper triangular for the `J`-blocks, i.e. an element of `P_J`.
pub fn is_block_upper(m: &QMat, j: &Parabolic) -> bool {
    let block = j.block_of();
    (0..m.rows()).all(|r| (0..m.cols()).all(|c| block[r] <= block[c] || m[(r, c)].is_zero()))
}

/// Factors `h = u · l · u'` with `u` block upper unipotent, `l` block
/// diagonal and `u'` block lower unipotent. Fails when a trailing Schur
/// complement block is singular.
pub fn block_udl(h: &QMat, j: &Parabolic) -> Option<(QMat, QMat, QMat)> {
    let n = h.rows();
    let blocks = j.blocks();
    let mut upper = QMat::identity(n);
    let mut lower = QMat::identity(n);
    let mut levi = QMat::zeros(n, n);
    let mut rest = h.clone();
    for b in blocks.iter().rev() {
        let head: Vec<usize> = (0..b.start).collect();
        let tail: Vec<usize> = b.clone().collect();
        let d = rest.submatrix(&tail, &tail);
        let d_inv = d.inverse()?;
        for (x, &r) in tail.iter().enumerate() {
            for (y, &c) in tail.iter().enumerate() {
                levi[(r, c)] = d[(x, y)].clone();
            }
        }
        if head.is_empty() {
            break;
        }
        let bm = rest.submatrix(&head, &tail);
        let cm = rest.submatrix(&tail, &head);
        let bd = &bm * &d_inv;
        let dc = &d_inv * &cm;
        for (x, &r) in head.iter().enumerate() {
            for (y, &c) in tail.iter().enumerate() {
                upper[(r, c)] = bd[(x, y)].clone();
            }
        }
        for (x, &r) in tail.iter().enumerate() {
            for (y, &c) in head.iter().enumerate() {
                lower[(r, c)] = dc[(x, y)].clone();
            }
        }
        let schur = &rest.submatrix(&head, &head) - &(&bd * &cm);
        rest = schur;
    }
    Some((upper, levi, lower))
}

fn bruhat_cell(h: &QMat) -> WeylElement {
    let n = h.rows();
    let mut m = h.clone();
    let mut used = vec![false; n];
    let mut perm = vec![0usize; n];
    for col in 0..n {
        let row = (0..n)
            .rev()
            .find(|&r| !used[r] && !m[(r, col)].is_zero())
            .expect("matrix is invertible");
        used[row] = true;
        perm[col] = row + 1;
        let p = m[(row, col)].clone();
        for r in 0..row {
            if m[(r, col)].is_zero() {
                continue;
            }
            let f = &m[(r, col)] / &p;
            for c in col..n {
                let v = &f * &m[(row, c)];
                m[(r, c)] -= v;
            }
        }
        for c in col + 1..n {
            if m[(row, c)].is_zero() {
                continue;
            }
            let f = &m[(row, c)] / &p;
            for r in 0..n {
                let v = &f * &m[(r, col)];
                m[(r, c)] -= v;
            }
        }
    }
    WeylElement::from_one_line(&perm).unwrap()
}

fn all_minors(m: &QMat, pred: impl Fn(&Rational) -> bool) -> bool {
    let n = m.rows();
    (1..=n).all(|k| {
        let subsets = crate::linalg::k_subsets(n, k);
        subsets.iter().all(|r| subsets.iter().all(|c| pred(&m.submatrix(r, c).det())))
    })
}

/// Every minor of the square matrix `m` is strictly positive.
pub fn minors_positive(m: &QMat) -> bool {
    all_minors(m, |x| x.is_positive())
}

/// No minor of the square matrix `m` is negative.
pub fn minors_nonnegative(m: &QMat) -> bool {
    all_minors(m, |x| !x.is_negative())
}
