//! Points of the strata `Z_J` and their totally positive parts.
//!
//! A point `(P, Q, γ)` is stored as `(J, a, b, l)` meaning `P = ^aP_J`,
//! `Q = ^bQ_J` and `γ = H_P · a l b^{-1} · U_Q`, where `l` lies in the Levi
//! `L = P_J ∩ Q_J` of `J`-block diagonal matrices.

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cells::{classify, CellLabel};
use crate::group::{
    block_diagonal_part, block_udl, is_block_diagonal, minors_nonnegative, GroupMatrix, ParabolicPoint,
};
use crate::laurent::{leading_term, lift, Laurent, LaurentMatrix};
use crate::linalg::QMat;
use crate::rational::{random_positive_vec, Rational};
use crate::rep::{compound, levi_projector, proportional, EmbeddingData};
use crate::tnn::phi_plus;
use crate::weyl::Parabolic;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct CompactPoint {
    pub j: Parabolic,
    pub a: GroupMatrix,
    pub b: GroupMatrix,
    pub l: GroupMatrix,
}

impl CompactPoint {
    pub fn new(j: Parabolic, a: GroupMatrix, b: GroupMatrix, l: GroupMatrix) -> Result<Self> {
        if !is_block_diagonal(l.mat(), &j) {
            return Err(Error::TypeMismatch(format!("Levi part is not block diagonal for J = {j}")));
        }
        Ok(CompactPoint { j, a, b, l })
    }

    /// `z°_J = (P_J, Q_J, H_{P_J} U_{Q_J})`.
    pub fn base_point(j: &Parabolic) -> Self {
        let id = GroupMatrix::identity(j.n());
        CompactPoint { j: j.clone(), a: id.clone(), b: id.clone(), l: id }
    }

    /// Recovers the Levi part from an arbitrary representative `g` of `γ`
    /// by factoring `a^{-1} g b` through `U_{P_J} · L · U_{Q_J}`.
    pub fn from_gamma(j: Parabolic, a: GroupMatrix, b: GroupMatrix, g: &GroupMatrix) -> Result<Self> {
        let h = a.inverse().mul(g).mul(&b);
        let (_, l, _) = block_udl(h.mat(), &j).ok_or(Error::NotOpposed)?;
        Ok(CompactPoint { j, a, b, l: GroupMatrix::new(l)? })
    }

    pub fn n(&self) -> usize {
        self.j.n()
    }

    /// Representative `a l b^{-1}` of `γ`.
    pub fn gamma(&self) -> GroupMatrix {
        self.a.mul(&self.l).mul(&self.b.inverse())
    }

    pub fn p(&self) -> ParabolicPoint {
        ParabolicPoint::standard(self.j.clone(), self.a.clone())
    }

    pub fn q(&self) -> ParabolicPoint {
        ParabolicPoint::opposite(self.j.clone(), self.b.clone())
    }

    /// `(g_1, g_2) · (P, Q, γ) = (^{g_1}P, ^{g_2}Q, g_1 γ g_2^{-1})`.
    pub fn act(&self, g1: &GroupMatrix, g2: &GroupMatrix) -> Self {
        CompactPoint { j: self.j.clone(), a: g1.mul(&self.a), b: g2.mul(&self.b), l: self.l.clone() }
    }

    /// `ψ̄(P, Q, γ) = (ψ(Q), ψ(P), ψ(γ))`.
    pub fn psibar(&self) -> Self {
        CompactPoint {
            j: self.j.clone(),
            a: self.b.psi().inverse(),
            b: self.a.psi().inverse(),
            l: self.l.psi(),
        }
    }

    /// `i_J(z) = ([ρ1(al) I_1 ρ1(b^{-1})], [ρ2(al) I_L ρ2(b^{-1})])`.
    pub fn embed(&self, data: &EmbeddingData) -> (QMat, QMat) {
        let al = self.a.mul(&self.l);
        let binv = self.b.inverse();
        let side = |k: usize, proj: &QMat| &(&compound(al.mat(), k) * proj) * &compound(binv.mat(), k);
        (side(data.rep1.k, &data.i1), side(data.rep2.k, &data.il))
    }

    /// `ρ_k(al) Π_k ρ_k(b^{-1})` for `k = 1..n-1`, where `Π_k` projects onto
    /// the `L`-submodule generated by the highest weight line.
    pub fn fundamental_images(&self) -> Vec<QMat> {
        let n = self.n();
        let al = self.a.mul(&self.l);
        let binv = self.b.inverse();
        (1..n)
            .map(|k| &(&compound(al.mat(), k) * &levi_projector(n, k, &self.j)) * &compound(binv.mat(), k))
            .collect()
    }
}

impl PartialEq for CompactPoint {
    fn eq(&self, other: &Self) -> bool {
        if self.j != other.j || self.p() != other.p() || self.q() != other.q() {
            return false;
        }
        let h = self.a.inverse().mul(&other.gamma()).mul(&self.b);
        let Some((_, l, _)) = block_udl(h.mat(), &self.j) else {
            return false;
        };
        self.j.blocks().iter().all(|r| {
            let idx: Vec<usize> = r.clone().collect();
            proportional(&l.submatrix(&idx, &idx), &self.l.mat().submatrix(&idx, &idx))
        })
    }
}

/// `lim_{s→0} (g_1, g_2^{-1}) · g(s)` along the one-parameter subgroup with
/// exponents `c`; the limit lies in `Z_J` for `J = {i : c_i = 0}`.
pub fn torus_limit(g1: &GroupMatrix, c: &[i64], g2: &GroupMatrix) -> Result<CompactPoint> {
    let n = g1.n();
    if c.len() + 1 != n {
        return Err(Error::InvalidExponents(format!("expected {} exponents, got {}", n - 1, c.len())));
    }
    if let Some(i) = c.iter().position(|&x| x < 0) {
        return Err(Error::InvalidExponents(format!("exponent {} is negative", i + 1)));
    }
    let j = Parabolic::new(n, (1..n).filter(|&i| c[i - 1] == 0))?;
    Ok(CompactPoint { j, a: g1.clone(), b: g2.inverse(), l: GroupMatrix::identity(n) })
}

/// `g_1 · diag(s^{-e_1}, ..., s^{-e_{n-1}}, 1) · g_2` with `e_i = c_i + ... + c_{n-1}`.
pub fn torus_curve(g1: &GroupMatrix, c: &[i64], g2: &GroupMatrix) -> LaurentMatrix {
    let n = g1.n();
    let mut t = LaurentMatrix::identity(n);
    for i in 0..n - 1 {
        let e: i64 = c[i..].iter().sum();
        t[(i, i)] = Laurent::monomial(Rational::from_integer(1.into()), -e);
    }
    lift(g1.mat()).matmul(&t).matmul(&lift(g2.mat()))
}

/// Limits of the compounds of [`torus_curve`], computed by Laurent
/// expansion; independent of [`torus_limit`].
pub fn curve_limit_images(g1: &GroupMatrix, c: &[i64], g2: &GroupMatrix) -> Vec<QMat> {
    let curve = torus_curve(g1, c, g2);
    (1..g1.n()).map(|k| leading_term(&curve.compound(k)).expect("invertible curve")).collect()
}

/// Entries all nonzero and of one sign, i.e. positive up to the projective scalar.
pub fn projectively_positive(m: &QMat) -> bool {
    let first = m.entries().next().expect("nonempty matrix");
    if first.is_zero() {
        return false;
    }
    let sign = first.is_positive();
    m.entries().all(|x| !x.is_zero() && x.is_positive() == sign)
}

/// How a membership verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Entrywise,
    Classifier,
}

/// Membership in `Z_{J,>0}` for a point known to lie in `Z_{J,≥0}`.
///
/// With fundamental embedding data the four matrices `M1, M2` of `i_J(z)` and
/// `M3, M4` of `i_J(ψ̄ z)` must be entrywise positive. Otherwise the point is
/// classified and must land in the top cell of `Z_J`.
pub fn membership_zgt0(z: &CompactPoint) -> (bool, Route) {
    match EmbeddingData::new(&z.j) {
        Ok(data) if data.exact => (entrywise_test(z, &data), Route::Entrywise),
        _ => (classifier_test(z), Route::Classifier),
    }
}

pub fn entrywise_test(z: &CompactPoint, data: &EmbeddingData) -> bool {
    let (m1, m2) = z.embed(data);
    let (m3, m4) = z.psibar().embed(data);
    [m1, m2, m3, m4].iter().all(projectively_positive)
}

pub fn classifier_test(z: &CompactPoint) -> bool {
    classify(z).is_ok_and(|label| label == CellLabel::top(&z.j))
}

/// `(g_1, g_2^{-1}) · z` for strictly positive `g_1, g_2`; the result must
/// lie in `Z_{J,>0}`.
pub fn positive_retraction(g1: &GroupMatrix, g2: &GroupMatrix, z: &CompactPoint) -> Result<CompactPoint> {
    for (name, g) in [("g1", g1), ("g2", g2)] {
        if !g.is_totally_positive() {
            return Err(Error::PositivityCertification(format!("{name} has a nonpositive minor")));
        }
    }
    let out = z.act(g1, &g2.inverse());
    if !membership_zgt0(&out).0 {
        return Err(Error::PositivityCertification("retraction left the positive part".into()));
    }
    Ok(out)
}

/// Sampled evidence that positive translates of `z` reach the normal form
/// `(g_1, g_2^{-1}) · z°_J` with `g_1 ∈ U^-_{≥0} T_{>0}`, `g_2 ∈ U^+_{≥0}`
/// and Levi part in `L_{≥0} Z(L)`.
pub fn z1_membership_diagnostic(z: &CompactPoint, samples: usize, seed: u64) -> Result<bool> {
    let label = classify(z)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let w1 = label.v.inverse().reduced_word();
        let w2 = label.v2.inverse().reduced_word();
        let u1 = phi_plus(&w1, &random_positive_vec(&mut rng, w1.len()))?;
        let u2 = phi_plus(&w2, &random_positive_vec(&mut rng, w2.len()))?;
        let moved = z.act(&u1, &u2.psi().inverse());
        if !z1_normal_form(&moved) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn z1_normal_form(z: &CompactPoint) -> bool {
    let j = &z.j;
    let Ok((um, t, up)) = z.a.ldu() else { return false };
    let Ok((um2, t2, up2)) = z.b.psi().inverse().ldu() else { return false };
    if !minors_nonnegative(um.mat()) || !minors_nonnegative(um2.mat()) {
        return false;
    }
    let levi = &(&(&(&QMat::diagonal(&t) * &block_diagonal_part(up.mat(), j)) * z.l.mat())
        * &block_diagonal_part(up2.mat(), j).transpose())
        * &QMat::diagonal(&t2);
    debug_assert!(is_block_diagonal(&levi, j));
    j.blocks().iter().all(|r| {
        let idx: Vec<usize> = r.clone().collect();
        let block = levi.submatrix(&idx, &idx);
        let flipped = block.map(|x| -x.clone());
        !block.det().is_zero() && (minors_nonnegative(&block) || minors_nonnegative(&flipped))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::tnn::sample_g_gt0;

    fn par(n: usize, m: &[usize]) -> Parabolic {
        Parabolic::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn base_point_embeds_to_projectors() {
        let j = par(3, &[1]);
        let data = EmbeddingData::new(&j).unwrap();
        let (m1, m2) = CompactPoint::base_point(&j).embed(&data);
        assert_eq!(m1, data.i1);
        assert_eq!(m2, QMat::diagonal(&[int(1), int(1), int(0)]));
        let z = CompactPoint::base_point(&Parabolic::full(3));
        assert_eq!(z.gamma(), GroupMatrix::identity(3));
    }

    #[test]
    fn action_and_psibar() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=3 {
            for j in Parabolic::all(n) {
                let z = CompactPoint::base_point(&j);
                assert_eq!(z.act(&GroupMatrix::identity(n), &GroupMatrix::identity(n)), z);
                assert_eq!(z.psibar(), z);
                let (g1, g2, h1, h2) =
                    (sample_g_gt0(n, &mut rng), sample_g_gt0(n, &mut rng), sample_g_gt0(n, &mut rng), sample_g_gt0(n, &mut rng));
                let moved = z.act(&g1, &g2);
                assert_eq!(moved.psibar().psibar(), moved);
                assert_eq!(moved.act(&h1, &h2), z.act(&h1.mul(&g1), &h2.mul(&g2)));
                assert_ne!(moved, z);
                // ψ̄((g1, g2)·z) = (ψ(g2)^{-1}, ψ(g1)^{-1})·ψ̄(z)
                assert_eq!(moved.psibar(), z.psibar().act(&g2.psi().inverse(), &g1.psi().inverse()));
                let g = moved.gamma();
                let again = CompactPoint::from_gamma(j.clone(), moved.a.clone(), moved.b.clone(), &g).unwrap();
                assert_eq!(again, moved);
            }
        }
    }

    #[test]
    fn torus_stabilizer_of_base_point() {
        // (t, 1)·z°_J = z°_J iff α_j(t) = 1 for j ∈ J
        let j = par(3, &[1]);
        let z = CompactPoint::base_point(&j);
        let t = GroupMatrix::diagonal(&[int(2), int(2), Rational::new(1.into(), 4.into())]).unwrap();
        assert_eq!(z.act(&t, &GroupMatrix::identity(3)), z);
        let t = GroupMatrix::diagonal(&[int(2), int(1), Rational::new(1.into(), 2.into())]).unwrap();
        assert_ne!(z.act(&t, &GroupMatrix::identity(3)), z);
    }

    #[test]
    fn limits_of_the_bare_curve_are_base_points() {
        for n in 2..=3 {
            let id = GroupMatrix::identity(n);
            for mask in 0..(1usize << (n - 1)) {
                let c: Vec<i64> = (0..n - 1).map(|i| ((mask >> i) & 1) as i64 * (i as i64 + 1)).collect();
                let z = torus_limit(&id, &c, &id).unwrap();
                assert_eq!(z, CompactPoint::base_point(&z.j));
                let images = curve_limit_images(&id, &c, &id);
                for (img, expect) in images.iter().zip(z.fundamental_images()) {
                    assert_eq!(*img, expect);
                }
            }
        }
        let id = GroupMatrix::identity(2);
        assert!(matches!(torus_limit(&id, &[-1], &id), Err(Error::InvalidExponents(_))));
    }

    #[test]
    fn membership_examples() {
        let g = GroupMatrix::new(QMat::from_i64(&[&[1, 1], &[1, 2]])).unwrap();
        let z = torus_limit(&g, &[1], &g).unwrap();
        assert_eq!(membership_zgt0(&z), (true, Route::Entrywise));
        let data = EmbeddingData::new(&z.j).unwrap();
        let (m1, _) = z.embed(&data);
        assert_eq!(m1, QMat::from_i64(&[&[1, 1], &[1, 1]]));
        for n in 2..=3 {
            for j in Parabolic::all(n) {
                if !j.is_full() {
                    assert!(!membership_zgt0(&CompactPoint::base_point(&j)).0);
                }
            }
        }
    }

    #[test]
    fn retraction_requires_strict_positivity() {
        let j = par(3, &[1]);
        let id = GroupMatrix::identity(3);
        let z = CompactPoint::base_point(&j);
        assert!(matches!(positive_retraction(&id, &id, &z), Err(Error::PositivityCertification(_))));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (g1, g2) = (sample_g_gt0(3, &mut rng), sample_g_gt0(3, &mut rng));
        let out = positive_retraction(&g1, &g2, &z).unwrap();
        assert!(membership_zgt0(&out).0);
        assert!(z1_membership_diagnostic(&out, 3, 9).unwrap());
    }
}
