//! Cells `Z^{v,w,v',w';y,y'}_{J,>0}` of the totally nonnegative part:
//! labels, enumeration, sampling, classification and exact Jacobian ranks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dual::Dual;
use crate::group::{associated_borel, opposed, position, FlagPoint, GroupMatrix, ParabolicPoint};
use crate::linalg::{Mat, QMat};
use crate::rational::{random_positive_vec, Rational};
use crate::rep::levi_projector;
use crate::strata::CompactPoint;
use crate::tnn::{coroots_mat, mr_mat, phi_minus_mat, phi_plus_mat, MrChart};
use crate::weyl::{Parabolic, WeylElement};
use crate::{Error, Result};

/// Largest `n` accepted by [`enumerate_cells`].
pub const MAX_ENUMERATION_N: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellLabel {
    pub j: Parabolic,
    pub v: WeylElement,
    pub w: WeylElement,
    pub v2: WeylElement,
    pub w2: WeylElement,
    pub y: WeylElement,
    pub y2: WeylElement,
}

impl CellLabel {
    /// The open cell of `Z_{J,≥0}`: `v = v' = y = y' = e` and `w = w'` the
    /// longest element of `W^J`.
    pub fn top(j: &Parabolic) -> Self {
        let n = j.n();
        let e = WeylElement::identity(n);
        let w = WeylElement::longest(n).mul(&j.longest());
        CellLabel { j: j.clone(), v: e.clone(), w: w.clone(), v2: e.clone(), w2: w, y: e.clone(), y2: e }
    }

    /// `v ≤ w`, `v' ≤ w'`, `w, w' ∈ W^J` and `y, y' ∈ W_J`.
    pub fn is_valid(&self) -> bool {
        let j = &self.j;
        let same_n = [&self.v, &self.w, &self.v2, &self.w2, &self.y, &self.y2].iter().all(|x| x.n() == j.n());
        same_n
            && self.v.bruhat_leq(&self.w).unwrap_or(false)
            && self.v2.bruhat_leq(&self.w2).unwrap_or(false)
            && j.is_min_coset_rep(&self.w)
            && j.is_min_coset_rep(&self.w2)
            && j.contains_element(&self.y)
            && j.contains_element(&self.y2)
    }

    /// Valid with additionally `v, v' ∈ W^J`.
    pub fn is_nonempty(&self) -> bool {
        self.is_valid() && self.j.is_min_coset_rep(&self.v) && self.j.is_min_coset_rep(&self.v2)
    }

    /// `d = l(w) + l(w') + 2 l(w_0^J) + |J| - l(v) - l(v') - l(y) - l(y')`.
    pub fn dimension(&self) -> Result<usize> {
        if !self.is_nonempty() {
            return Err(Error::EmptyCell(self.to_string()));
        }
        let up = self.w.length() + self.w2.length() + 2 * self.j.longest().length() + self.j.len();
        let down = self.v.length() + self.v2.length() + self.y.length() + self.y2.length();
        Ok(up - down)
    }
}

impl std::fmt::Display for CellLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "J={} v={} w={} v'={} w'={} y={} y'={}",
            self.j, self.v, self.w, self.v2, self.w2, self.y, self.y2
        )
    }
}

fn bruhat_pairs(lower: &[WeylElement], upper: &[WeylElement]) -> Vec<(WeylElement, WeylElement)> {
    let mut out = Vec::new();
    for w in upper {
        for v in lower {
            if v.bruhat_leq(w).unwrap() {
                out.push((v.clone(), w.clone()));
            }
        }
    }
    out
}

fn labels_from_pairs(j: &Parabolic, pairs: &[(WeylElement, WeylElement)], keep: impl Fn(&CellLabel) -> bool) -> Vec<CellLabel> {
    let wj = j.subgroup();
    let mut out = Vec::new();
    for (v, w) in pairs {
        for (v2, w2) in pairs {
            for y in &wj {
                for y2 in &wj {
                    let label = CellLabel {
                        j: j.clone(),
                        v: v.clone(),
                        w: w.clone(),
                        v2: v2.clone(),
                        w2: w2.clone(),
                        y: y.clone(),
                        y2: y2.clone(),
                    };
                    if keep(&label) {
                        out.push(label);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Every nonempty label of `Z_J` with its dimension, sorted.
pub fn enumerate_cells(j: &Parabolic) -> Result<Vec<(CellLabel, usize)>> {
    if j.n() > MAX_ENUMERATION_N {
        return Err(Error::Schema(format!("enumeration is limited to n <= {MAX_ENUMERATION_N}")));
    }
    let reps = j.min_coset_reps();
    let pairs = bruhat_pairs(&reps, &reps);
    Ok(labels_from_pairs(j, &pairs, |_| true)
        .into_iter()
        .map(|l| {
            let d = l.dimension().expect("enumerated labels are nonempty");
            (l, d)
        })
        .collect())
}

/// Valid labels of `Z_J` with `v ∉ W^J` or `v' ∉ W^J`.
pub fn empty_labels(j: &Parabolic) -> Vec<CellLabel> {
    let all = WeylElement::all(j.n());
    let reps = j.min_coset_reps();
    let pairs = bruhat_pairs(&all, &reps);
    labels_from_pairs(j, &pairs, |l| !l.is_nonempty())
}

/// Whole-compactification census over all `J`.
pub fn enumerate_all(n: usize) -> Result<Vec<(CellLabel, usize)>> {
    let mut out = Vec::new();
    for j in Parabolic::all(n) {
        out.extend(enumerate_cells(&j)?);
    }
    Ok(out)
}

/// Coordinates of the Levi factor `φ^-(a) · ∏_{j∈J} α_j^∨(t_j) · φ^+(b)`
/// on the words of `y w_0^J` and `w_0^J y'`.
#[derive(Clone, Debug)]
pub struct LeviChart {
    pub wminus: WeylElement,
    pub wplus: WeylElement,
    pub aminus: Vec<Rational>,
    pub torus: Vec<Rational>,
    pub aplus: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct CellSample {
    pub label: CellLabel,
    pub seed: u64,
    pub chart1: MrChart,
    pub chart2: MrChart,
    pub levi: LeviChart,
}

impl CellSample {
    /// All coordinates in chart order: `g`, Levi (`a`, `t`, `b`), `g'`.
    pub fn coordinates(&self) -> Vec<Rational> {
        let mut out = self.chart1.coords.clone();
        out.extend(self.levi.aminus.iter().cloned());
        out.extend(self.levi.torus.iter().cloned());
        out.extend(self.levi.aplus.iter().cloned());
        out.extend(self.chart2.coords.iter().cloned());
        out
    }

    /// The point `(^gP_J, ^{ψ(g')^{-1}}Q_J, g H_{P_J} l U_{Q_J} ψ(g'))`.
    pub fn point(&self) -> CompactPoint {
        let j = &self.label.j;
        let g = self.chart1.evaluate();
        let g2 = self.chart2.evaluate();
        let l = GroupMatrix::new(levi_mat(j, &self.levi, &self.levi.aminus, &self.levi.torus, &self.levi.aplus))
            .expect("determinant 1");
        CompactPoint::new(j.clone(), g, g2.psi().inverse(), l).expect("Levi chart is block diagonal")
    }
}

fn levi_mat<T: crate::linalg::Field>(j: &Parabolic, chart: &LeviChart, a: &[T], t: &[T], b: &[T]) -> Mat<T> {
    let n = j.n();
    phi_minus_mat(n, chart.wminus.reduced_word().letters(), a)
        .matmul(&coroots_mat(n, j.members(), t))
        .matmul(&phi_plus_mat(n, chart.wplus.reduced_word().letters(), b))
}

/// Draws a point of the cell from its explicit parametrization.
pub fn sample_cell(label: &CellLabel, seed: u64) -> Result<(CellSample, CompactPoint)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_cell_with(label, seed, &mut rng)
}

pub fn sample_cell_with<R: Rng + ?Sized>(label: &CellLabel, seed: u64, rng: &mut R) -> Result<(CellSample, CompactPoint)> {
    if !label.is_valid() {
        return Err(Error::Schema(format!("invalid label {label}")));
    }
    if !label.is_nonempty() {
        return Err(Error::EmptyCell(label.to_string()));
    }
    let j = &label.j;
    let w0j = j.longest();
    let chart1 = MrChart::sample(&label.v, &label.w, rng)?;
    let wminus = label.y.mul(&w0j);
    let wplus = w0j.mul(&label.y2);
    let levi = LeviChart {
        aminus: random_positive_vec(rng, wminus.length()),
        torus: random_positive_vec(rng, j.len()),
        aplus: random_positive_vec(rng, wplus.length()),
        wminus,
        wplus,
    };
    let chart2 = MrChart::sample(&label.v2, &label.w2, rng)?;
    let sample = CellSample { label: label.clone(), seed, chart1, chart2, levi };
    let point = sample.point();
    Ok((sample, point))
}

/// Reads the label off the relative positions of the point.
///
/// `(v, w)` come from `B' = P^{B^+}` via `w = pos(B^+, B')` and
/// `w_0 v = pos(B^-, B')`; `(v', w')` likewise from `ψ(Q)`. Then
/// `pos(P^{B^+}, ^γ(Q^{B^+})) = y w_0` and `pos(P^{B^-}, ^γ(Q^{B^-})) = y' w_0`.
pub fn classify(z: &CompactPoint) -> Result<CellLabel> {
    let n = z.n();
    let j = &z.j;
    let w0 = WeylElement::longest(n);
    let (bplus, bminus) = (FlagPoint::standard(n), FlagPoint::opposite(n));
    let p = z.p();
    let gamma = z.gamma();
    if !opposed(&p, &z.q().act(&gamma))? {
        return Err(Error::NotOpposed);
    }
    let schubert = |par: &ParabolicPoint| {
        let b = associated_borel(par, &bplus);
        (w0.mul(&position(&bminus, &b)), position(&bplus, &b))
    };
    let (v, w) = schubert(&p);
    let psi_q = ParabolicPoint::standard(j.clone(), z.b.psi().inverse());
    let (v2, w2) = schubert(&psi_q);
    let y = position(&associated_borel(&p, &bplus), &associated_borel(&z.q(), &bplus).act(&gamma)).mul(&w0);
    let y2 = position(&associated_borel(&p, &bminus), &associated_borel(&z.q(), &bminus).act(&gamma)).mul(&w0);
    let label = CellLabel { j: j.clone(), v, w, v2, w2, y, y2 };
    if !label.is_valid() {
        return Err(Error::Schema(format!("positions outside the expected cosets: {label}")));
    }
    Ok(label)
}

/// Exact rank of the Jacobian of the sampler composed with the affine
/// charts of all fundamental images, compared against the cell dimension.
pub fn jacobian_rank(label: &CellLabel, seed: u64) -> Result<(usize, usize)> {
    let d = label.dimension()?;
    let (sample, _) = sample_cell(label, seed)?;
    let coords = sample.coordinates();
    if coords.len() != d {
        return Err(Error::DegenerateChart(format!("{} coordinates for dimension {d}", coords.len())));
    }
    if d == 0 {
        return Ok((0, 0));
    }
    let vars: Vec<Dual> = coords.iter().enumerate().map(|(k, c)| Dual::variable(c.clone(), k, d)).collect();
    let j = &label.j;
    let n = j.n();
    let c1 = sample.chart1.coords.len();
    let (la, lt, lb) = (sample.levi.aminus.len(), sample.levi.torus.len(), sample.levi.aplus.len());
    let mut rest = vars.as_slice();
    let mut take = |k: usize| {
        let (head, tail) = rest.split_at(k);
        rest = tail;
        head.to_vec()
    };
    let (x1, xa, xt, xb) = (take(c1), take(la), take(lt), take(lb));
    let x2 = take(sample.chart2.coords.len());
    let g = mr_mat(&sample.chart1.psub, &x1);
    let l = levi_mat(j, &sample.levi, &xa, &xt, &xb);
    let g2t = mr_mat(&sample.chart2.psub, &x2).transpose();
    let gl = g.matmul(&l);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for k in 1..n {
        let proj = levi_projector(n, k, j).map(|x| Dual::constant(x.clone()));
        let f = gl.compound(k).matmul(&proj).matmul(&g2t.compound(k));
        let Some(pivot) = f.entries().find(|x| !num_traits::Zero::is_zero(&x.val)).cloned() else {
            return Err(Error::DegenerateChart(format!("fundamental image {k} vanishes")));
        };
        let inv = crate::linalg::Field::inv(&pivot);
        for e in f.entries() {
            let q = e.clone() * inv.clone();
            rows.push((0..d).map(|c| q.partial(c)).collect());
        }
    }
    let jac = QMat::from_rows(rows);
    Ok((jac.rank_fraction_free(), d))
}

/// Whether the Jacobian rank equals the cell dimension.
pub fn jacobian_rank_check(label: &CellLabel, seed: u64) -> Result<bool> {
    let (rank, d) = jacobian_rank(label, seed)?;
    Ok(rank == d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::membership_zgt0;

    fn par(n: usize, m: &[usize]) -> Parabolic {
        Parabolic::new(n, m.iter().copied()).unwrap()
    }

    fn s(n: usize, word: &[usize]) -> WeylElement {
        WeylElement::from_word(n, word).unwrap()
    }

    #[test]
    fn dimension_examples() {
        let e2 = WeylElement::identity(2);
        let s1 = s(2, &[1]);
        let full = Parabolic::full(2);
        let top = CellLabel::top(&full);
        assert_eq!(top.dimension().unwrap(), 3);
        let torus = CellLabel { y: s1.clone(), y2: s1.clone(), ..top };
        assert_eq!(torus.dimension().unwrap(), 1);
        let open = CellLabel::top(&par(2, &[]));
        assert_eq!(open.w, s1);
        assert_eq!(open.dimension().unwrap(), 2);
        let vertex = CellLabel { v: s1.clone(), v2: s1.clone(), ..open.clone() };
        assert_eq!(vertex.dimension().unwrap(), 0);
        let boundary = CellLabel::top(&par(3, &[1]));
        assert_eq!(boundary.w, s(3, &[1, 2]));
        assert_eq!(boundary.dimension().unwrap(), 7);
        let empty = CellLabel { v: e2.clone(), w: e2.clone(), v2: e2.clone(), w2: e2, ..CellLabel::top(&full) };
        assert_eq!(empty.dimension().unwrap(), 3);
    }

    #[test]
    fn census_small() {
        assert_eq!(enumerate_cells(&par(2, &[])).unwrap().len(), 9);
        assert_eq!(enumerate_cells(&Parabolic::full(2)).unwrap().len(), 4);
        assert_eq!(enumerate_cells(&Parabolic::full(3)).unwrap().len(), 36);
        assert!(empty_labels(&par(2, &[])).is_empty());
        assert!(!empty_labels(&par(3, &[1])).is_empty());
    }

    #[test]
    fn base_points_classify_to_the_torus_cell() {
        for n in 2..=3 {
            for j in Parabolic::all(n) {
                let label = classify(&CompactPoint::base_point(&j)).unwrap();
                let e = WeylElement::identity(n);
                assert_eq!((&label.v, &label.w, &label.v2, &label.w2), (&e, &e, &e, &e));
                assert_eq!(label.y, j.longest());
                assert_eq!(label.y2, j.longest());
            }
        }
    }

    #[test]
    fn round_trip_small() {
        for n in 2..=3 {
            for j in Parabolic::all(n) {
                for (label, _) in enumerate_cells(&j).unwrap() {
                    let (_, z) = sample_cell(&label, 1).unwrap();
                    assert_eq!(classify(&z).unwrap(), label);
                }
            }
        }
    }

    #[test]
    fn top_cells_are_positive() {
        for n in 2..=3 {
            for j in Parabolic::all(n) {
                let (_, z) = sample_cell(&CellLabel::top(&j), 4).unwrap();
                assert!(membership_zgt0(&z).0, "J = {j}");
            }
        }
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(jacobian_rank(&CellLabel::top(&Parabolic::full(2)), 0).unwrap(), (3, 3));
        assert_eq!(jacobian_rank(&CellLabel::top(&par(3, &[1])), 0).unwrap(), (7, 7));
        let s1 = s(2, &[1]);
        let open = CellLabel::top(&par(2, &[]));
        let vertex = CellLabel { v: s1.clone(), v2: s1, ..open };
        assert_eq!(jacobian_rank(&vertex, 0).unwrap(), (0, 0));
    }

    #[test]
    fn empty_labels_are_refused() {
        for label in empty_labels(&par(3, &[1])) {
            assert!(matches!(sample_cell(&label, 0), Err(Error::EmptyCell(_))));
        }
    }
}
