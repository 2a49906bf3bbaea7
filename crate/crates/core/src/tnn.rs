//! Totally nonnegative parametrizations: `φ^±`, positive torus elements,
//! `G_{>0}` samples, Marsh–Rietsch charts, `L_{≥0}` and double Bruhat cells.
//!
//! Matrix builders are generic over [`Field`] so the same code evaluates
//! at rational points and at dual numbers for Jacobians.

use num_traits::Signed;
use rand::Rng;

use crate::group::GroupMatrix;
use crate::linalg::{k_subsets, Field, Mat, QMat};
use crate::rational::{random_nonnegative, random_positive_vec, Rational};
use crate::weyl::{Parabolic, PositiveSubexpression, ReducedWord, WeylElement};
use crate::{Error, Result};

pub fn x_mat<T: Field>(n: usize, i: usize, a: T) -> Mat<T> {
    let mut m = Mat::identity(n);
    m[(i - 1, i)] = a;
    m
}

pub fn y_mat<T: Field>(n: usize, i: usize, a: T) -> Mat<T> {
    let mut m = Mat::identity(n);
    m[(i, i - 1)] = a;
    m
}

pub fn sdot_mat<T: Field>(n: usize, i: usize) -> Mat<T> {
    let mut m = Mat::identity(n);
    m[(i - 1, i - 1)] = T::zero();
    m[(i, i)] = T::zero();
    m[(i - 1, i)] = -T::one();
    m[(i, i - 1)] = T::one();
    m
}

/// `∏_i α_i^∨(c_i)` over the listed coroots.
pub fn coroots_mat<T: Field>(n: usize, coroots: &[usize], values: &[T]) -> Mat<T> {
    let mut diag: Vec<T> = vec![T::one(); n];
    for (&i, c) in coroots.iter().zip(values) {
        diag[i - 1] = diag[i - 1].clone() * c.clone();
        diag[i] = diag[i].clone() * c.inv();
    }
    Mat::diagonal(&diag)
}

pub fn phi_plus_mat<T: Field>(n: usize, letters: &[usize], a: &[T]) -> Mat<T> {
    letters.iter().zip(a).fold(Mat::identity(n), |acc, (&i, c)| acc.matmul(&x_mat(n, i, c.clone())))
}

pub fn phi_minus_mat<T: Field>(n: usize, letters: &[usize], a: &[T]) -> Mat<T> {
    letters.iter().zip(a).fold(Mat::identity(n), |acc, (&i, c)| acc.matmul(&y_mat(n, i, c.clone())))
}

/// `g_1 ⋯ g_k` with `g_j = y_{i_j}(a_j)` for `j ∈ J°` and `ṡ_{i_j}` for `j ∈ J^+`.
pub fn mr_mat<T: Field>(psub: &PositiveSubexpression, coords: &[T]) -> Mat<T> {
    let n = psub.word.n();
    let mut next = coords.iter();
    let mut acc = Mat::identity(n);
    for (pos, &i) in psub.word.letters().iter().enumerate() {
        let g = if psub.jplus.contains(&(pos + 1)) {
            sdot_mat(n, i)
        } else {
            y_mat(n, i, next.next().expect("one coordinate per J° position").clone())
        };
        acc = acc.matmul(&g);
    }
    acc
}

fn check_nonnegative(word: &ReducedWord, a: &[Rational]) -> Result<()> {
    if a.len() != word.len() {
        return Err(Error::LengthMismatch { expected: word.len(), got: a.len() });
    }
    match a.iter().position(Signed::is_negative) {
        Some(k) => Err(Error::NegativeCoordinate(k)),
        None => Ok(()),
    }
}

fn check_positive(a: &[Rational]) -> Result<()> {
    match a.iter().position(|x| !x.is_positive()) {
        Some(k) => Err(Error::NonpositiveCoordinate(k)),
        None => Ok(()),
    }
}

/// `φ^+(a) = x_{i_1}(a_1) ⋯ x_{i_k}(a_k)`.
pub fn phi_plus(word: &ReducedWord, a: &[Rational]) -> Result<GroupMatrix> {
    check_nonnegative(word, a)?;
    GroupMatrix::new(phi_plus_mat(word.n(), word.letters(), a))
}

/// `φ^-(a) = y_{i_1}(a_1) ⋯ y_{i_k}(a_k)`.
pub fn phi_minus(word: &ReducedWord, a: &[Rational]) -> Result<GroupMatrix> {
    check_nonnegative(word, a)?;
    GroupMatrix::new(phi_minus_mat(word.n(), word.letters(), a))
}

/// `u⁻ · t · u⁺` with all coordinates drawn positive along the lex-least
/// word of `w_0`.
pub fn sample_g_gt0<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GroupMatrix {
    let w0 = WeylElement::longest(n);
    let p = DoubleCellPoint::sample(&w0, &w0, rng);
    p.evaluate().expect("positive coordinates")
}

/// A Marsh–Rietsch chart: positive subexpression and one positive
/// coordinate per position in `J°`.
#[derive(Clone, Debug)]
pub struct MrChart {
    pub psub: PositiveSubexpression,
    pub coords: Vec<Rational>,
}

impl MrChart {
    pub fn new(psub: PositiveSubexpression, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != psub.jcirc.len() {
            return Err(Error::LengthMismatch { expected: psub.jcirc.len(), got: coords.len() });
        }
        check_positive(&coords)?;
        Ok(MrChart { psub, coords })
    }

    /// Chart on the lex-least word of `w` with random coordinates.
    pub fn sample<R: Rng + ?Sized>(v: &WeylElement, w: &WeylElement, rng: &mut R) -> Result<Self> {
        let psub = PositiveSubexpression::new(&w.reduced_word(), v)?;
        let coords = random_positive_vec(rng, psub.jcirc.len());
        Ok(MrChart { psub, coords })
    }

    pub fn evaluate(&self) -> GroupMatrix {
        GroupMatrix::new(mr_mat(&self.psub, &self.coords)).expect("generators have determinant 1")
    }
}

/// [`MrChart::evaluate`] with validation.
pub fn mr_evaluate(psub: &PositiveSubexpression, coords: &[Rational]) -> Result<GroupMatrix> {
    Ok(MrChart::new(psub.clone(), coords.to_vec())?.evaluate())
}

/// `u⁻ · t · u⁺` in `U^-_{w⁻,>0} T_{>0} U^+_{w⁺,>0}`.
#[derive(Clone, Debug)]
pub struct DoubleCellPoint {
    pub wminus: WeylElement,
    pub wplus: WeylElement,
    pub aminus: Vec<Rational>,
    pub torus: Vec<Rational>,
    pub aplus: Vec<Rational>,
}

impl DoubleCellPoint {
    pub fn sample<R: Rng + ?Sized>(wminus: &WeylElement, wplus: &WeylElement, rng: &mut R) -> Self {
        let n = wminus.n();
        DoubleCellPoint {
            wminus: wminus.clone(),
            wplus: wplus.clone(),
            aminus: random_positive_vec(rng, wminus.length()),
            torus: random_positive_vec(rng, n - 1),
            aplus: random_positive_vec(rng, wplus.length()),
        }
    }

    pub fn evaluate(&self) -> Result<GroupMatrix> {
        let n = self.wminus.n();
        check_positive(&self.aminus)?;
        check_positive(&self.torus)?;
        check_positive(&self.aplus)?;
        let um = phi_minus(&self.wminus.reduced_word(), &self.aminus)?;
        let t = GroupMatrix::torus(n, &self.torus)?;
        let up = phi_plus(&self.wplus.reduced_word(), &self.aplus)?;
        Ok(um.mul(&t).mul(&up))
    }
}

/// Recovers `(w⁻, w⁺)` of a totally nonnegative invertible matrix from its
/// Gaussian factors: `u⁻ ∈ B^+ẇ⁻B^+` and `u⁺ ∈ B^-ẇ⁺B^-`.
pub fn double_cell_of(g: &GroupMatrix) -> Result<(WeylElement, WeylElement)> {
    let n = g.n();
    let (um, _, up) = g.ldu()?;
    let w0 = WeylElement::longest(n);
    let w0dot = GroupMatrix::wdot(&w0);
    let wminus = um.bruhat_cell();
    let flipped = w0dot.mul(&up).mul(&w0dot.inverse()).bruhat_cell();
    Ok((wminus, w0.mul(&flipped).mul(&w0)))
}

/// `φ^-_J · t · φ^+_J` over the word of `w_0^J` with nonnegative unipotent
/// coordinates and positive torus coordinates on the coroots of `J`.
pub fn sample_l_ge0<R: Rng + ?Sized>(j: &Parabolic, rng: &mut R) -> GroupMatrix {
    let n = j.n();
    let word = j.longest().reduced_word();
    let a: Vec<Rational> = (0..word.len()).map(|_| random_nonnegative(rng)).collect();
    let b: Vec<Rational> = (0..word.len()).map(|_| random_nonnegative(rng)).collect();
    let t = random_positive_vec(rng, j.len());
    let m = phi_minus_mat(n, word.letters(), &a)
        .matmul(&coroots_mat(n, j.members(), &t))
        .matmul(&phi_plus_mat(n, word.letters(), &b));
    GroupMatrix::new(m).expect("determinant 1")
}

/// Strict positivity of every minor `Δ_{I,K}` with `i_r ≤ k_r` for all `r`:
/// membership of an upper unitriangular matrix in `U^+_{>0}`.
pub fn upper_minors_positive(u: &QMat) -> bool {
    let n = u.rows();
    (1..=n).all(|k| {
        let subsets = k_subsets(n, k);
        subsets.iter().all(|r| {
            subsets
                .iter()
                .filter(|c| r.iter().zip(c.iter()).all(|(i, j)| i <= j))
                .all(|c| u.minor(r, c).is_positive())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::group::{position, FlagPoint};
    use crate::rational::{frac, int};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn word(n: usize, l: &[usize]) -> ReducedWord {
        ReducedWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn phi_examples() {
        let w = word(3, &[1, 2, 1]);
        assert_eq!(phi_plus(&w, &[int(0), int(0), int(0)]).unwrap(), GroupMatrix::identity(3));
        assert_eq!(phi_plus(&word(2, &[1]), &[int(3)]).unwrap(), GroupMatrix::x(2, 1, int(3)).unwrap());
        assert!(matches!(phi_plus(&w, &[int(1)]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(phi_minus(&w, &[int(1), int(-1), int(1)]), Err(Error::NegativeCoordinate(1))));
        // x1(a) x2(b) x1(c) = x2(bc/(a+c)) x1(a+c) x2(ab/(a+c))
        let (a, b, c) = (int(2), frac(3, 5), int(7));
        let lhs = phi_plus(&w, &[a.clone(), b.clone(), c.clone()]).unwrap();
        let s = &a + &c;
        let rhs = phi_plus(&word(3, &[2, 1, 2]), &[&b * &c / &s, s.clone(), &a * &b / &s]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sample_g_gt0_is_totally_positive() {
        let g = GroupMatrix::new(QMat::from_i64(&[&[1, 1], &[1, 2]])).unwrap();
        assert!(g.is_totally_positive());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=4 {
            let g = sample_g_gt0(n, &mut rng);
            let h = sample_g_gt0(n, &mut rng);
            assert!(g.is_totally_positive());
            assert!(g.mul(&h).is_totally_positive());
            assert!(g.psi().is_totally_positive());
        }
    }

    #[test]
    fn mr_examples() {
        let n = 2;
        let s1 = WeylElement::simple(n, 1).unwrap();
        let e = WeylElement::identity(n);
        let ps = PositiveSubexpression::new(&word(2, &[1]), &e).unwrap();
        let g = mr_evaluate(&ps, &[int(2)]).unwrap();
        assert_eq!(g, GroupMatrix::y(2, 1, int(2)).unwrap());
        let bg = FlagPoint::standard(n).act(&g);
        assert_eq!(position(&FlagPoint::standard(n), &bg), s1);
        assert_eq!(position(&FlagPoint::opposite(n), &bg), WeylElement::longest(n));
        assert!(matches!(mr_evaluate(&ps, &[int(0)]), Err(Error::NonpositiveCoordinate(0))));

        let ps = PositiveSubexpression::new(&word(2, &[1]), &s1).unwrap();
        assert_eq!(mr_evaluate(&ps, &[]).unwrap(), GroupMatrix::sdot(2, 1).unwrap());
    }

    #[test]
    fn double_cells_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=3 {
            for wm in WeylElement::all(n) {
                for wp in WeylElement::all(n) {
                    let p = DoubleCellPoint::sample(&wm, &wp, &mut rng);
                    let g = p.evaluate().unwrap();
                    assert!(g.is_totally_nonnegative());
                    assert_eq!(double_cell_of(&g).unwrap(), (wm.clone(), wp.clone()));
                }
            }
        }
        let e = WeylElement::identity(2);
        let p = DoubleCellPoint { wminus: WeylElement::simple(2, 1).unwrap(), wplus: e, aminus: vec![int(2)], torus: vec![int(3)], aplus: vec![] };
        let g = p.evaluate().unwrap();
        assert!(g.mat()[(0, 1)].is_zero());
        assert!(g.mat().det().is_positive());
    }

    #[test]
    fn levi_samples_are_block_tnn() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4 {
            for j in Parabolic::all(n) {
                let l = sample_l_ge0(&j, &mut rng);
                assert!(crate::group::is_block_diagonal(l.mat(), &j));
                assert!(l.is_totally_nonnegative());
            }
        }
    }
}
