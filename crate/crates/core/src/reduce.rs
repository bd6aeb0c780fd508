//! Reduction of measurement sets through the projected linear system:
//! vectorize projected operators, pick linearly independent columns, solve
//! U x = m per target, and tabulate naive-versus-reduced counts per RDM
//! class.

use crate::encode::Encoding;
use crate::error::{Error, Result};
use crate::fermion::{
    classify, enumerate_rdm, hermitian_components, rdm_element_operator, FermionOperator,
    RdmElementSpec, SpinOrbital,
};
use crate::pauli::{PauliString, PauliSum};
use crate::symproj::{ProjectedOperator, Projector, Symmetry};
use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::collections::HashMap;

/// Relative residual below which a candidate is linearly dependent.
pub const LIN_TOL: f64 = 1e-9;

/// Coordinate index shared by a family of projected operators on one
/// support: every distinct (row, col) entry key gets one coordinate,
/// ordered by (row, col) ascending.
#[derive(Debug, Clone)]
pub struct CoordIndex {
    pub support: Vec<usize>,
    pub coords: Vec<(u64, u64)>,
    positions: BTreeMap<(u64, u64), usize>,
}

impl CoordIndex {
    pub fn build<'a>(ops: impl IntoIterator<Item = &'a ProjectedOperator>) -> Result<CoordIndex> {
        let mut support: Option<Vec<usize>> = None;
        let mut keys = BTreeMap::new();
        for op in ops {
            match &support {
                None => support = Some(op.support.clone()),
                Some(s) if *s == op.support => {}
                Some(s) => {
                    return Err(Error::SupportMismatch(format!(
                        "{:?} vs {:?}",
                        s, op.support
                    )))
                }
            }
            for &key in op.entries.keys() {
                let next = keys.len();
                keys.entry(key).or_insert(next);
            }
        }
        // BTreeMap iteration gives (row, col) ascending; reassign positions
        // in that canonical order.
        let coords: Vec<(u64, u64)> = keys.keys().copied().collect();
        let positions = coords.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Ok(CoordIndex {
            support: support.unwrap_or_default(),
            coords,
            positions,
        })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn vector_of(&self, op: &ProjectedOperator) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); self.coords.len()];
        for (key, &amp) in &op.entries {
            if let Some(&i) = self.positions.get(key) {
                v[i] = amp;
            }
        }
        v
    }
}

/// Vectorizes a family of projected operators over a shared coordinate
/// index; all operators must live on the same support.
pub fn vectorize(ops: &[ProjectedOperator]) -> Result<(CoordIndex, Vec<Vec<Complex64>>)> {
    let index = CoordIndex::build(ops.iter())?;
    let vectors = ops.iter().map(|op| index.vector_of(op)).collect();
    Ok((index, vectors))
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Greedy scan in the given order; a candidate is kept iff its residual
/// after projecting onto the span of the kept columns exceeds
/// `tol * norm`. The kept set spans the whole candidate space.
pub fn select_independent(candidates: &[Vec<Complex64>], order: &[usize], tol: f64) -> Vec<usize> {
    let mut kept = Vec::new();
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for &i in order {
        let v = &candidates[i];
        let v_norm = norm(v);
        if v_norm < tol {
            continue;
        }
        let mut r = v.clone();
        for q in &basis {
            let overlap = dot(q, &r);
            for (rk, qk) in r.iter_mut().zip(q) {
                *rk -= overlap * qk;
            }
        }
        let r_norm = norm(&r);
        if r_norm > tol * v_norm {
            for rk in r.iter_mut() {
                *rk /= Complex64::new(r_norm, 0.0);
            }
            basis.push(r);
            kept.push(i);
        }
    }
    kept
}

/// Least-squares solve of U x = m by Gram-Schmidt QR and back substitution.
/// Returns the coefficient vector and the residual norm.
pub fn solve(columns: &[&[Complex64]], m: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    let k = columns.len();
    if k == 0 {
        return Ok((Vec::new(), norm(m)));
    }
    let dim = m.len();
    for col in columns {
        if col.len() != dim {
            return Err(Error::DimensionMismatch(col.len(), dim));
        }
    }
    // QR: q_j orthonormal, r[(i, j)] upper triangular.
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    let mut r = vec![vec![Complex64::new(0.0, 0.0); k]; k];
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.to_vec();
        for (i, qi) in q.iter().enumerate() {
            let proj = dot(qi, &v);
            r[i][j] = proj;
            for (vk, qk) in v.iter_mut().zip(qi) {
                *vk -= proj * qk;
            }
        }
        let v_norm = norm(&v);
        if v_norm < LIN_TOL {
            return Err(Error::Config(
                "solve called with linearly dependent columns".into(),
            ));
        }
        r[j][j] = Complex64::new(v_norm, 0.0);
        for vk in v.iter_mut() {
            *vk /= Complex64::new(v_norm, 0.0);
        }
        q.push(v);
    }
    // x = R^-1 Q^H m
    let qtm: Vec<Complex64> = q.iter().map(|qi| dot(qi, m)).collect();
    let mut x = vec![Complex64::new(0.0, 0.0); k];
    for i in (0..k).rev() {
        let mut acc = qtm[i];
        for j in i + 1..k {
            acc -= r[i][j] * x[j];
        }
        x[i] = acc / r[i][i];
    }
    let mut residual_vec = m.to_vec();
    for (j, col) in columns.iter().enumerate() {
        for (rk, ck) in residual_vec.iter_mut().zip(col.iter()) {
            *rk -= x[j] * ck;
        }
    }
    Ok((x, norm(&residual_vec)))
}

/// Policy order for candidate selection: fewest Y letters first, then the
/// full string label lexicographically.
pub fn policy_order(candidates: &[PauliString]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by_key(|&i| (candidates[i].y_count(), candidates[i].label()));
    order
}

/// Per-target solution aligned to the deduplicated measurement list.
#[derive(Debug, Clone)]
pub struct TargetSolution {
    pub id: usize,
    /// One coefficient per measurement string; zero where the target does
    /// not use that string.
    pub coeffs: Vec<Complex64>,
    pub residual: f64,
}

/// The reduced measurement basis for a set of targets.
#[derive(Debug, Clone)]
pub struct ReducedBasis {
    /// Deduplicated measurement strings (unit coefficient), in first-use order.
    pub measurements: Vec<PauliString>,
    pub targets: Vec<TargetSolution>,
}

impl ReducedBasis {
    pub fn max_residual(&self) -> f64 {
        self.targets.iter().map(|t| t.residual).fold(0.0, f64::max)
    }
}

/// Runs the full reduction pipeline per target: encode, project termwise on
/// the shared support, vectorize, select independent columns in policy
/// order, and solve. Measurement strings are deduplicated across targets;
/// targets whose projection vanishes (zero-class) contribute no strings and
/// an all-zero coefficient vector.
pub fn reduce_measurements(
    targets: &[FermionOperator],
    enc: &Encoding,
    n_spatial: usize,
    syms: &[Symmetry],
) -> Result<ReducedBasis> {
    let projector = Projector::new(enc, n_spatial, syms);

    // Targets are independent; solve them in parallel and merge in target
    // order so the measurement list is deterministic.
    let solved: Vec<(Vec<(PauliString, Complex64)>, f64)> = targets
        .par_iter()
        .map(|target| reduce_one_target(target, enc, &projector))
        .collect::<Result<_>>()?;

    let mut measurements: Vec<PauliString> = Vec::new();
    let mut index_of: HashMap<(u64, u64), usize> = HashMap::new();
    let mut raw_targets: Vec<(usize, Vec<(usize, Complex64)>, f64)> = Vec::new();
    for (id, (sparse, residual)) in solved.into_iter().enumerate() {
        let mut coeffs = Vec::with_capacity(sparse.len());
        for (p, xi) in sparse {
            let key = (p.x_mask(), p.z_mask());
            let slot = *index_of.entry(key).or_insert_with(|| {
                measurements.push(p);
                measurements.len() - 1
            });
            coeffs.push((slot, xi));
        }
        raw_targets.push((id, coeffs, residual));
    }

    let n_meas = measurements.len();
    let targets_out = raw_targets
        .into_iter()
        .map(|(id, sparse, residual)| {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); n_meas];
            for (slot, v) in sparse {
                coeffs[slot] = v;
            }
            TargetSolution {
                id,
                coeffs,
                residual,
            }
        })
        .collect();

    Ok(ReducedBasis {
        measurements,
        targets: targets_out,
    })
}

/// Selected measurement strings and solve coefficients for a single target;
/// empty for targets whose projection vanishes.
fn reduce_one_target(
    target: &FermionOperator,
    enc: &Encoding,
    projector: &Projector,
) -> Result<(Vec<(PauliString, Complex64)>, f64)> {
    let sum = enc.encode(target)?;
    if sum.is_empty() {
        return Ok((Vec::new(), 0.0));
    }
    // The candidate basis comes from expressing each ladder term in Pauli
    // strings; coefficient cancellations between terms (e.g. a Hermitian
    // combination with equal weights) must not shrink it.
    let mut cand_keys: std::collections::BTreeSet<(u64, u64)> = Default::default();
    for term in &target.terms {
        let single = FermionOperator::from_terms(target.n_modes, vec![term.clone()])?;
        for p in enc.encode(&single)?.iter() {
            cand_keys.insert((p.x_mask(), p.z_mask()));
        }
    }
    let candidates: Vec<PauliString> = cand_keys
        .into_iter()
        .map(|(x, z)| PauliString::from_masks(sum.n_qubits(), x, z, Complex64::new(1.0, 0.0)))
        .collect::<Result<_>>()?;

    // Candidates of one target share their X mask, so rank and solve
    // coefficients survive dropping the common tensor factor outside the
    // reduction support (computed over the whole candidate family).
    let mut cand_sum = PauliSum::new(sum.n_qubits())?;
    for p in &candidates {
        cand_sum.add(p)?;
    }
    let support = projector.reduction_support(&cand_sum)?;
    let mut target_proj = ProjectedOperator {
        n_qubits: sum.n_qubits(),
        support: Vec::new(),
        z_tail: 0,
        entries: Default::default(),
    };
    for term in sum.iter() {
        let proj = projector.project_masked(&term, support)?;
        target_proj.support = proj.support;
        for (&key, &amp) in &proj.entries {
            let entry = target_proj
                .entries
                .entry(key)
                .or_insert(Complex64::new(0.0, 0.0));
            *entry += amp;
            if entry.norm() < crate::symproj::ENTRY_TOL {
                target_proj.entries.remove(&key);
            }
        }
    }
    if target_proj.is_zero() {
        return Ok((Vec::new(), 0.0));
    }
    let cand_proj: Vec<ProjectedOperator> = candidates
        .iter()
        .map(|p| projector.project_masked(p, support))
        .collect::<Result<_>>()?;

    let coord_index = CoordIndex::build(cand_proj.iter().chain(std::iter::once(&target_proj)))?;
    let vectors: Vec<Vec<Complex64>> = cand_proj
        .iter()
        .map(|op| coord_index.vector_of(op))
        .collect();
    let m = coord_index.vector_of(&target_proj);

    let order = policy_order(&candidates);
    let kept = select_independent(&vectors, &order, LIN_TOL);
    let columns: Vec<&[Complex64]> = kept.iter().map(|&i| vectors[i].as_slice()).collect();
    let (x, residual) = solve(&columns, &m)?;
    let m_norm = norm(&m).max(1.0);
    if residual > LIN_TOL * m_norm * 1e3 {
        return Err(Error::TargetNotInSpan { residual });
    }
    let sparse = kept
        .iter()
        .zip(&x)
        .map(|(&ci, &xi)| (candidates[ci], xi))
        .collect();
    Ok((sparse, residual))
}

/// One row of the naive-versus-reduced count table. Zero-class rows have no
/// meaningful site or naive count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTableRow {
    pub k: usize,
    pub spin_class: String,
    pub q_sites: Option<usize>,
    pub naive: Option<usize>,
    pub reduced: usize,
}

/// Row descriptors in printed order: (diag alpha pairs, excitation alpha
/// pairs, diag beta pairs, excitation beta pairs), or a zero row.
enum RowShape {
    Pairs(usize, usize, usize, usize),
    Zero(&'static str),
}

fn row_shapes(k: usize) -> Vec<RowShape> {
    use RowShape::*;
    match k {
        1 => vec![Pairs(1, 0, 0, 0), Pairs(0, 1, 0, 0), Zero("αβ")],
        2 => vec![
            Pairs(2, 0, 0, 0),
            Pairs(1, 1, 0, 0),
            Pairs(0, 2, 0, 0),
            Zero("αααβ"),
            Pairs(1, 0, 1, 0),
            Pairs(1, 0, 0, 1),
            Pairs(0, 1, 0, 1),
        ],
        3 => vec![
            Pairs(3, 0, 0, 0),
            Pairs(2, 1, 0, 0),
            Pairs(1, 2, 0, 0),
            Pairs(0, 3, 0, 0),
            Zero("αααααβ"),
            Pairs(2, 0, 1, 0),
            Pairs(1, 1, 1, 0),
            Pairs(2, 0, 0, 1),
            Pairs(1, 1, 0, 1),
            Pairs(0, 2, 1, 0),
            Pairs(0, 2, 0, 1),
            Zero("αααβββ"),
        ],
        _ => vec![],
    }
}

/// Builds a representative element spec for a row shape using fresh spatial
/// orbitals: shared pairs reuse one orbital on both sides, excitations use
/// two distinct ones.
fn representative(da: usize, xa: usize, db: usize, xb: usize) -> (RdmElementSpec, usize) {
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut next_a = 0usize;
    for _ in 0..da {
        upper.push(SpinOrbital::alpha(next_a));
        lower.push(SpinOrbital::alpha(next_a));
        next_a += 1;
    }
    for _ in 0..xa {
        upper.push(SpinOrbital::alpha(next_a));
        lower.push(SpinOrbital::alpha(next_a + 1));
        next_a += 2;
    }
    let mut next_b = 0usize;
    for _ in 0..db {
        upper.push(SpinOrbital::beta(next_b));
        lower.push(SpinOrbital::beta(next_b));
        next_b += 1;
    }
    for _ in 0..xb {
        upper.push(SpinOrbital::beta(next_b));
        lower.push(SpinOrbital::beta(next_b + 1));
        next_b += 2;
    }
    let k = da + xa + db + xb;
    let n_spatial = next_a.max(next_b).max(k);
    (RdmElementSpec::new(k, upper, lower).unwrap(), n_spatial)
}

fn zero_representative(label: &str, k: usize) -> (RdmElementSpec, usize) {
    // Any Sz-violating spec with the printed spin pattern works; counts are
    // not computed for zero rows.
    let (upper, lower): (Vec<SpinOrbital>, Vec<SpinOrbital>) = match (label, k) {
        ("αβ", 1) => (vec![SpinOrbital::alpha(0)], vec![SpinOrbital::beta(0)]),
        ("αααβ", 2) => (
            vec![SpinOrbital::alpha(0), SpinOrbital::alpha(1)],
            vec![SpinOrbital::alpha(0), SpinOrbital::beta(0)],
        ),
        ("αααααβ", 3) => (
            vec![
                SpinOrbital::alpha(0),
                SpinOrbital::alpha(1),
                SpinOrbital::alpha(2),
            ],
            vec![
                SpinOrbital::alpha(0),
                SpinOrbital::alpha(1),
                SpinOrbital::beta(0),
            ],
        ),
        _ => (
            vec![
                SpinOrbital::alpha(0),
                SpinOrbital::alpha(1),
                SpinOrbital::beta(0),
            ],
            vec![
                SpinOrbital::alpha(0),
                SpinOrbital::beta(0),
                SpinOrbital::beta(1),
            ],
        ),
    };
    (RdmElementSpec::new(k, upper, lower).unwrap(), k)
}

/// Counts for one representative element: naive is the number of distinct
/// Pauli strings across both Hermitian components, reduced the size of the
/// deduplicated measurement set the pipeline selects for them.
pub fn element_counts(
    spec: &RdmElementSpec,
    kind: crate::encode::EncodingKind,
    spin_order: crate::fermion::SpinOrder,
    n_spatial: usize,
    syms: &[Symmetry],
) -> Result<(usize, usize)> {
    let enc = Encoding::new(kind, 2 * n_spatial, spin_order)?;
    let op = rdm_element_operator(spec, spin_order, n_spatial)?;
    let (re, im) = hermitian_components(&op);

    let mut naive = PauliSum::new(enc.n_qubits())?;
    naive.add_sum(&enc.encode(&re)?)?;
    if !im.is_empty() {
        naive.add_sum(&enc.encode(&im)?)?;
    }
    // Count distinct strings, not surviving coefficients: the two
    // components may cancel numerically when summed.
    let mut keys: std::collections::BTreeSet<(u64, u64)> = std::collections::BTreeSet::new();
    for comp in [&re, &im] {
        if comp.is_empty() {
            continue;
        }
        for p in enc.encode(comp)?.iter() {
            keys.insert((p.x_mask(), p.z_mask()));
        }
    }

    let mut targets = vec![re];
    if !im.is_empty() {
        targets.push(im);
    }
    let basis = reduce_measurements(&targets, &enc, n_spatial, syms)?;
    Ok((keys.len(), basis.measurements.len()))
}

/// Table of naive and reduced measurement counts per (spin class, q-sites)
/// representative, in printed row order.
pub fn count_table(
    k: usize,
    kind: crate::encode::EncodingKind,
    spin_order: crate::fermion::SpinOrder,
    syms: &[Symmetry],
) -> Result<Vec<CountTableRow>> {
    if !(1..=3).contains(&k) {
        return Err(Error::Config(format!("k must be 1, 2, or 3, got {k}")));
    }
    let mut rows = Vec::new();
    for shape in row_shapes(k) {
        match shape {
            RowShape::Pairs(da, xa, db, xb) => {
                let (spec, n_spatial) = representative(da, xa, db, xb);
                let class = classify(&spec, spin_order, n_spatial);
                let (naive, reduced) = element_counts(&spec, kind, spin_order, n_spatial, syms)?;
                rows.push(CountTableRow {
                    k,
                    spin_class: class.spin_class,
                    q_sites: class.q_sites,
                    naive: Some(naive),
                    reduced,
                });
            }
            RowShape::Zero(label) => {
                let (spec, n_spatial) = zero_representative(label, k);
                let class = classify(&spec, spin_order, n_spatial);
                debug_assert!(class.is_zero_class());
                rows.push(CountTableRow {
                    k,
                    spin_class: label.to_string(),
                    q_sites: None,
                    naive: None,
                    reduced: 0,
                });
            }
        }
    }
    Ok(rows)
}

/// A full k-RDM tomography plan on a register: every element's naive string
/// expansion plus the shared reduced basis, with the bookkeeping needed to
/// reconstruct element values from measured Pauli expectations.
#[derive(Debug, Clone)]
pub struct TomographyPlan {
    pub k: usize,
    pub n_spatial: usize,
    pub elements: Vec<PlanElement>,
    /// Deduplicated strings used by naive tomography (unit coefficient).
    pub naive_strings: Vec<PauliString>,
    /// Shared reduced basis over all Hermitian-component targets.
    pub reduced: ReducedBasis,
}

#[derive(Debug, Clone)]
pub struct PlanElement {
    pub spec: RdmElementSpec,
    pub diagonal: bool,
    /// JW/parity/BK expansion of the element operator itself: indices into
    /// `naive_strings` with complex coefficients.
    pub naive_terms: Vec<(usize, Complex64)>,
    /// Index of the real Hermitian component in `reduced.targets`.
    pub real_target: usize,
    /// Index of the imaginary component; None for diagonal elements.
    pub imag_target: Option<usize>,
}

pub fn tomography_plan(
    k: usize,
    n_spatial: usize,
    kind: crate::encode::EncodingKind,
    spin_order: crate::fermion::SpinOrder,
    syms: &[Symmetry],
) -> Result<TomographyPlan> {
    let enc = Encoding::new(kind, 2 * n_spatial, spin_order)?;
    let specs = enumerate_rdm(k, n_spatial)?;

    let mut naive_strings: Vec<PauliString> = Vec::new();
    let mut naive_index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut targets: Vec<FermionOperator> = Vec::new();
    let mut elements = Vec::new();

    for spec in specs {
        if spec.is_excluded() {
            continue;
        }
        let class = classify(&spec, spin_order, n_spatial);
        // Zero-class elements vanish on every (N, Sz)-symmetric state and
        // are not measured by either scheme (the count table prints them
        // as "-"); both reconstructions fix them to zero.
        if class.is_zero_class() {
            continue;
        }
        let op = rdm_element_operator(&spec, spin_order, n_spatial)?;
        let sum = enc.encode(&op)?;
        let mut naive_terms = Vec::with_capacity(sum.len());
        for p in sum.iter() {
            let key = (p.x_mask(), p.z_mask());
            let slot = *naive_index.entry(key).or_insert_with(|| {
                naive_strings.push(p.with_coeff(Complex64::new(1.0, 0.0)));
                naive_strings.len() - 1
            });
            naive_terms.push((slot, p.coeff));
        }

        let (re, im) = hermitian_components(&op);
        let real_target = targets.len();
        targets.push(re);
        let imag_target = if im.is_empty() {
            None
        } else {
            targets.push(im);
            Some(real_target + 1)
        };
        elements.push(PlanElement {
            diagonal: spec.is_diagonal(),
            spec,
            naive_terms,
            real_target,
            imag_target,
        });
    }

    let reduced = reduce_measurements(&targets, &enc, n_spatial, syms)?;
    Ok(TomographyPlan {
        k,
        n_spatial,
        elements,
        naive_strings,
        reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::EncodingKind;
    use crate::fermion::{LadderTerm, SpinOrder};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn hopping_pair(c1: Complex64, c2: Complex64) -> FermionOperator {
        FermionOperator::from_terms(
            4,
            vec![
                LadderTerm::new(vec![(0, true), (1, false)], c1),
                LadderTerm::new(vec![(1, true), (0, false)], c2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn hopping_selection_and_solve() {
        // Four alpha orbitals; M = c1 a+_1 a_2 + c2 a+_2 a_1 reduces onto
        // the projected XX and XY strings with x = ((c1+c2)/2, (i c1 - i c2)/2).
        let enc = Encoding::new(EncodingKind::JordanWigner, 4, SpinOrder::Blocked).unwrap();
        let (c1, c2) = (c(0.3, -0.8), c(1.1, 0.25));
        let target = hopping_pair(c1, c2);
        let basis = reduce_measurements(&[target], &enc, 4, &[Symmetry::ParticleNumber]).unwrap();
        assert_eq!(basis.measurements.len(), 2);
        assert_eq!(basis.measurements[0].label(), "XXII");
        assert_eq!(basis.measurements[1].label(), "XYII");
        let x = &basis.targets[0].coeffs;
        let i = c(0.0, 1.0);
        assert!((x[0] - (c1 + c2) * 0.5).norm() < 1e-12);
        assert!((x[1] - i * (c1 - c2) * 0.5).norm() < 1e-12);
        assert!(basis.targets[0].residual < 1e-12);
    }

    #[test]
    fn vectorize_two_site_projections() {
        // coordinates {(10,01), (01,10)} in row-major order; the XX and XY
        // projections vectorize to (1,1) and (-i,+i); all four strings
        // span a 2-dimensional space
        let enc = Encoding::new(EncodingKind::JordanWigner, 2, SpinOrder::Blocked).unwrap();
        let projector = crate::symproj::Projector::new(&enc, 2, &[Symmetry::ParticleNumber]);
        let proj = |label: &str| {
            projector
                .project(&PauliString::from_label(label, c(1.0, 0.0)).unwrap())
                .unwrap()
        };
        let ops = vec![proj("XX"), proj("XY"), proj("YX"), proj("YY")];
        let (index, vectors) = vectorize(&ops).unwrap();
        assert_eq!(index.coords, vec![(0b01, 0b10), (0b10, 0b01)]);
        let i = c(0.0, 1.0);
        assert!((vectors[0][0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((vectors[0][1] - c(1.0, 0.0)).norm() < 1e-14);
        // coordinate (0b01, 0b10) is the matrix element <10|A|01>
        assert!((vectors[1][0] + i).norm() < 1e-14);
        assert!((vectors[1][1] - i).norm() < 1e-14);
        let kept = select_independent(
            &vectors,
            &policy_order(&[
                PauliString::from_label("XX", c(1.0, 0.0)).unwrap(),
                PauliString::from_label("XY", c(1.0, 0.0)).unwrap(),
                PauliString::from_label("YX", c(1.0, 0.0)).unwrap(),
                PauliString::from_label("YY", c(1.0, 0.0)).unwrap(),
            ]),
            LIN_TOL,
        );
        assert_eq!(kept.len(), 2);

        let (empty_index, empty_vecs) = vectorize(&[]).unwrap();
        assert!(empty_index.is_empty());
        assert!(empty_vecs.is_empty());
    }

    #[test]
    fn select_keeps_first_independent() {
        // duplicate vectors: exactly one kept
        let v = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ];
        let kept = select_independent(&v, &[0, 1], LIN_TOL);
        assert_eq!(kept, vec![0]);
        // single candidate kept
        let kept = select_independent(&v[..1], &[0], LIN_TOL);
        assert_eq!(kept, vec![0]);
    }

    #[test]
    fn solve_identity_case() {
        let col = vec![c(1.0, 0.0), c(1.0, 0.0)];
        let (x, res) = solve(&[col.as_slice()], &col).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(res < 1e-14);
    }

    #[test]
    fn zero_class_target_contributes_nothing() {
        // a+_{0a} a_{0b} violates Sz: the projected target vanishes.
        let enc = Encoding::new(EncodingKind::JordanWigner, 2, SpinOrder::Blocked).unwrap();
        let target = FermionOperator::from_terms(
            2,
            vec![LadderTerm::new(vec![(0, true), (1, false)], c(1.0, 0.0))],
        )
        .unwrap();
        let basis = reduce_measurements(
            &[target],
            &enc,
            1,
            &[Symmetry::ParticleNumber, Symmetry::SpinZ],
        )
        .unwrap();
        assert!(basis.measurements.is_empty());
        assert!(basis.targets[0].coeffs.is_empty());
    }

    #[test]
    fn counts_are_mode_order_invariant() {
        for k in [1usize, 2] {
            let blocked = count_table(
                k,
                EncodingKind::JordanWigner,
                SpinOrder::Blocked,
                &[Symmetry::ParticleNumber, Symmetry::SpinZ],
            )
            .unwrap();
            let interleaved = count_table(
                k,
                EncodingKind::JordanWigner,
                SpinOrder::Interleaved,
                &[Symmetry::ParticleNumber, Symmetry::SpinZ],
            )
            .unwrap();
            for (b, i) in blocked.iter().zip(&interleaved) {
                assert_eq!((b.naive, b.reduced), (i.naive, i.reduced));
                assert_eq!(b.spin_class, i.spin_class);
            }
        }
    }

    #[test]
    fn table_counts_1rdm() {
        let rows = count_table(
            1,
            EncodingKind::JordanWigner,
            SpinOrder::Blocked,
            &[Symmetry::ParticleNumber, Symmetry::SpinZ],
        )
        .unwrap();
        let printed: Vec<(Option<usize>, usize)> =
            rows.iter().map(|r| (r.naive, r.reduced)).collect();
        assert_eq!(printed, vec![(Some(2), 2), (Some(4), 2), (None, 0)]);
        assert_eq!(rows[1].spin_class, "ᾱᾱ");
        assert_eq!(rows[1].q_sites, Some(2));
    }
}
