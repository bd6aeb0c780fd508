//! Second-quantized operator construction.
//!
//! Operators are kept verbatim as ordered products of creation/annihilation
//! factors; no normal ordering or anticommutator simplification is applied,
//! so signs stay auditable. Spin orbitals are addressed as (spatial, spin)
//! pairs and mapped to linear mode indices by a [`SpinOrder`].

use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spin {
    Alpha,
    Beta,
}

impl Spin {
    pub fn label(self) -> char {
        match self {
            Spin::Alpha => 'a',
            Spin::Beta => 'b',
        }
    }
}

/// Mapping of spin orbitals onto linear mode indices.
///
/// `Blocked` puts all alpha spatial orbitals first (ascending), then all
/// beta; `Interleaved` alternates alpha/beta per spatial orbital.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpinOrder {
    #[default]
    Blocked,
    Interleaved,
}

impl SpinOrder {
    pub fn mode_index(self, n_spatial: usize, orbital: SpinOrbital) -> usize {
        match self {
            SpinOrder::Blocked => match orbital.spin {
                Spin::Alpha => orbital.spatial,
                Spin::Beta => n_spatial + orbital.spatial,
            },
            SpinOrder::Interleaved => {
                2 * orbital.spatial
                    + match orbital.spin {
                        Spin::Alpha => 0,
                        Spin::Beta => 1,
                    }
            }
        }
    }

    pub fn spin_of_mode(self, n_spatial: usize, mode: usize) -> Spin {
        match self {
            SpinOrder::Blocked => {
                if mode < n_spatial {
                    Spin::Alpha
                } else {
                    Spin::Beta
                }
            }
            SpinOrder::Interleaved => {
                if mode.is_multiple_of(2) {
                    Spin::Alpha
                } else {
                    Spin::Beta
                }
            }
        }
    }
}

/// A spin orbital: spatial index plus spin label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinOrbital {
    pub spatial: usize,
    pub spin: Spin,
}

impl SpinOrbital {
    pub fn new(spatial: usize, spin: Spin) -> Self {
        SpinOrbital { spatial, spin }
    }

    pub fn alpha(spatial: usize) -> Self {
        Self::new(spatial, Spin::Alpha)
    }

    pub fn beta(spatial: usize) -> Self {
        Self::new(spatial, Spin::Beta)
    }
}

/// One product of ladder operators with a coefficient. `factors` are written
/// left to right as an operator product; `(mode, true)` is a creation.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderTerm {
    pub factors: Vec<(usize, bool)>,
    pub coeff: Complex64,
}

impl LadderTerm {
    pub fn new(factors: Vec<(usize, bool)>, coeff: Complex64) -> Self {
        LadderTerm { factors, coeff }
    }

    /// Hermitian conjugate: reverse the factor order, toggle daggers,
    /// conjugate the coefficient.
    pub fn adjoint(&self) -> LadderTerm {
        LadderTerm {
            factors: self.factors.iter().rev().map(|&(m, d)| (m, !d)).collect(),
            coeff: self.coeff.conj(),
        }
    }
}

/// A sum of ladder-operator products on a fixed number of modes.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionOperator {
    pub n_modes: usize,
    pub terms: Vec<LadderTerm>,
}

impl FermionOperator {
    pub fn new(n_modes: usize) -> Self {
        FermionOperator {
            n_modes,
            terms: Vec::new(),
        }
    }

    pub fn add_term(&mut self, term: LadderTerm) -> Result<()> {
        for &(mode, _) in &term.factors {
            if mode >= self.n_modes {
                return Err(Error::ModeOutOfRange {
                    index: mode,
                    n_modes: self.n_modes,
                });
            }
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn from_terms(n_modes: usize, terms: Vec<LadderTerm>) -> Result<Self> {
        let mut op = Self::new(n_modes);
        for t in terms {
            op.add_term(t)?;
        }
        Ok(op)
    }

    pub fn adjoint(&self) -> FermionOperator {
        FermionOperator {
            n_modes: self.n_modes,
            terms: self.terms.iter().map(LadderTerm::adjoint).collect(),
        }
    }

    pub fn scaled(&self, factor: Complex64) -> FermionOperator {
        FermionOperator {
            n_modes: self.n_modes,
            terms: self
                .terms
                .iter()
                .map(|t| LadderTerm::new(t.factors.clone(), t.coeff * factor))
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Index specification of one k-RDM element: k upper (creation) and k lower
/// (annihilation) spin orbitals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RdmElementSpec {
    pub k: usize,
    pub upper: Vec<SpinOrbital>,
    pub lower: Vec<SpinOrbital>,
}

impl RdmElementSpec {
    pub fn new(k: usize, upper: Vec<SpinOrbital>, lower: Vec<SpinOrbital>) -> Result<Self> {
        if upper.len() != k || lower.len() != k {
            return Err(Error::Config(format!(
                "k-RDM spec needs {k} upper and {k} lower indices, got {} and {}",
                upper.len(),
                lower.len()
            )));
        }
        Ok(RdmElementSpec { k, upper, lower })
    }

    /// True when a creation (or annihilation) tuple repeats a spin orbital,
    /// which makes the element identically zero by Pauli exclusion.
    pub fn is_excluded(&self) -> bool {
        has_repeat(&self.upper) || has_repeat(&self.lower)
    }

    /// A diagonal element has the same multiset of upper and lower indices.
    pub fn is_diagonal(&self) -> bool {
        sorted(&self.upper) == sorted(&self.lower)
    }
}

fn sorted(v: &[SpinOrbital]) -> Vec<SpinOrbital> {
    let mut s = v.to_vec();
    s.sort();
    s
}

fn has_repeat(v: &[SpinOrbital]) -> bool {
    let s = sorted(v);
    s.windows(2).any(|w| w[0] == w[1])
}

/// Builds the ladder-operator product for one RDM element:
/// a^dag_{u1} ... a^dag_{uk} a_{lk} ... a_{l1}, i.e. the lower tuple enters
/// in reversed order so diagonal elements are products of number operators.
pub fn rdm_element_operator(
    spec: &RdmElementSpec,
    order: SpinOrder,
    n_spatial: usize,
) -> Result<FermionOperator> {
    let n_modes = 2 * n_spatial;
    let mut factors = Vec::with_capacity(2 * spec.k);
    for &so in &spec.upper {
        if so.spatial >= n_spatial {
            return Err(Error::ModeOutOfRange {
                index: so.spatial,
                n_modes: n_spatial,
            });
        }
        factors.push((order.mode_index(n_spatial, so), true));
    }
    for &so in spec.lower.iter().rev() {
        if so.spatial >= n_spatial {
            return Err(Error::ModeOutOfRange {
                index: so.spatial,
                n_modes: n_spatial,
            });
        }
        factors.push((order.mode_index(n_spatial, so), false));
    }
    FermionOperator::from_terms(
        n_modes,
        vec![LadderTerm::new(factors, Complex64::new(1.0, 0.0))],
    )
}

/// Hermitian components of a single-term operator T: (T + T^dag, i(T - T^dag)).
/// Diagonal elements return (T, empty).
pub fn hermitian_components(op: &FermionOperator) -> (FermionOperator, FermionOperator) {
    let adj = op.adjoint();
    if op == &adj {
        return (op.clone(), FermionOperator::new(op.n_modes));
    }
    let mut real_part = op.clone();
    for t in &adj.terms {
        real_part.terms.push(t.clone());
    }
    let i = Complex64::new(0.0, 1.0);
    let mut imag_part = op.scaled(i);
    for t in adj.scaled(-i).terms {
        imag_part.terms.push(t);
    }
    (real_part, imag_part)
}

/// Table-row classification of an RDM element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Canonical row label, e.g. "αα", "ᾱᾱβ̄β̄"; zero classes carry the
    /// spin pattern only ("αβ", "αααβ", ...).
    pub spin_class: String,
    /// None for zero-class elements.
    pub q_sites: Option<usize>,
    /// Modes touched by the element, ascending, under the given ordering.
    pub modes: Vec<usize>,
}

impl Classification {
    pub fn is_zero_class(&self) -> bool {
        self.q_sites.is_none()
    }
}

const ALPHA: &str = "α";
const ALPHA_BAR: &str = "ᾱ";
const BETA: &str = "β";
const BETA_BAR: &str = "β̄";

fn class_label(diag_a: usize, exc_a: usize, diag_b: usize, exc_b: usize) -> String {
    let mut s = String::new();
    for _ in 0..diag_a {
        s.push_str(ALPHA);
        s.push_str(ALPHA);
    }
    for _ in 0..exc_a {
        s.push_str(ALPHA_BAR);
        s.push_str(ALPHA_BAR);
    }
    for _ in 0..diag_b {
        s.push_str(BETA);
        s.push_str(BETA);
    }
    for _ in 0..exc_b {
        s.push_str(BETA_BAR);
        s.push_str(BETA_BAR);
    }
    s
}

fn zero_label(n_alpha: usize, n_beta: usize) -> String {
    let mut s = String::new();
    for _ in 0..n_alpha {
        s.push_str(ALPHA);
    }
    for _ in 0..n_beta {
        s.push_str(BETA);
    }
    s
}

/// Classifies an element by its Table-row shape: counts of diagonal
/// (shared) pairs and excitation pairs per spin, canonicalized so the
/// alpha side carries at least as many pairs as the beta side. Elements
/// whose upper/lower tuples have unequal alpha (or beta) counts violate
/// Sz and are reported as zero-class.
pub fn classify(spec: &RdmElementSpec, order: SpinOrder, n_spatial: usize) -> Classification {
    let count = |v: &[SpinOrbital], spin: Spin| v.iter().filter(|so| so.spin == spin).count();
    let ua = count(&spec.upper, Spin::Alpha);
    let la = count(&spec.lower, Spin::Alpha);
    let ub = count(&spec.upper, Spin::Beta);
    let lb = count(&spec.lower, Spin::Beta);

    let mut modes: Vec<usize> = spec
        .upper
        .iter()
        .chain(spec.lower.iter())
        .map(|&so| order.mode_index(n_spatial, so))
        .collect();
    modes.sort_unstable();
    modes.dedup();

    if ua != la || ub != lb {
        let (na, nb) = (ua + la, ub + lb);
        return Classification {
            spin_class: zero_label(na.max(nb), na.min(nb)),
            q_sites: None,
            modes,
        };
    }

    // Shared (diagonal) orbitals per spin: multiset intersection.
    let shared = |spin: Spin| {
        let mut up = sorted(
            &spec
                .upper
                .iter()
                .copied()
                .filter(|so| so.spin == spin)
                .collect::<Vec<_>>(),
        );
        let lo = sorted(
            &spec
                .lower
                .iter()
                .copied()
                .filter(|so| so.spin == spin)
                .collect::<Vec<_>>(),
        );
        let mut n = 0;
        for so in lo {
            if let Some(pos) = up.iter().position(|&u| u == so) {
                up.remove(pos);
                n += 1;
            }
        }
        n
    };
    let sa = shared(Spin::Alpha);
    let sb = shared(Spin::Beta);
    let (ea, eb) = (ua - sa, ub - sb);

    // Canonical spin configuration: alpha side is the larger, and on a tie
    // the excitation bars sit on the beta side.
    let (da, xa, db, xb) = if (ua + la) < (ub + lb) || ((ua + la) == (ub + lb) && ea > eb) {
        (sb, eb, sa, ea)
    } else {
        (sa, ea, sb, eb)
    };

    Classification {
        spin_class: class_label(da, xa, db, xb),
        q_sites: Some(modes.len()),
        modes,
    }
}

/// All k-RDM element specs for `n_spatial` spatial orbitals, one per
/// Hermitian-conjugate pair, zero-class specs included. Upper and lower
/// tuples run over ascending spin-orbital combinations with upper <= lower.
pub fn enumerate_rdm(k: usize, n_spatial: usize) -> Result<Vec<RdmElementSpec>> {
    if !(1..=3).contains(&k) {
        return Err(Error::Config(format!("k must be 1, 2, or 3, got {k}")));
    }
    if n_spatial < k {
        return Err(Error::Config(format!(
            "need n_spatial >= k, got {n_spatial} < {k}"
        )));
    }
    let orbitals: Vec<SpinOrbital> = (0..n_spatial)
        .map(SpinOrbital::alpha)
        .chain((0..n_spatial).map(SpinOrbital::beta))
        .collect();
    let tuples = combinations(&orbitals, k);
    let mut specs = Vec::new();
    for (i, upper) in tuples.iter().enumerate() {
        for lower in &tuples[i..] {
            specs.push(RdmElementSpec::new(k, upper.clone(), lower.clone())?);
        }
    }
    Ok(specs)
}

fn combinations(items: &[SpinOrbital], k: usize) -> Vec<Vec<SpinOrbital>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if idx[pos] != pos + items.len() - k {
                idx[pos] += 1;
                for j in pos + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return out;
            }
        }
    }
}
