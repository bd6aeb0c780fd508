//! Grouping of Pauli strings into simultaneously measurable sets.
//!
//! The graph is stored as the conflict graph (an edge joins two strings
//! that do NOT qubit-wise commute), so that greedy sequential coloring
//! yields a clique cover of the compatibility relation directly. Vertices
//! are colored in descending conflict-degree order, ties broken by index.

use crate::error::{Error, Result};
use crate::pauli::{qwc_masks, Letter, PauliString};
use rayon::prelude::*;

/// Conflict graph over a set of deduplicated Pauli strings, adjacency
/// stored as one bitset row per vertex.
#[derive(Debug)]
pub struct CompatibilityGraph {
    pub n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl CompatibilityGraph {
    pub fn conflicts(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i * self.words..(i + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }
}

/// Builds the conflict graph; rows are computed independently in parallel.
pub fn build_graph(strings: &[PauliString]) -> Result<CompatibilityGraph> {
    let n = strings.len();
    if let Some(first) = strings.first() {
        for s in strings {
            if s.n_qubits() != first.n_qubits() {
                return Err(Error::DimensionMismatch(first.n_qubits(), s.n_qubits()));
            }
        }
    }
    let xs: Vec<u64> = strings.iter().map(|s| s.x_mask()).collect();
    let zs: Vec<u64> = strings.iter().map(|s| s.z_mask()).collect();
    let words = n.div_ceil(64);
    let mut rows = vec![0u64; n * words];
    rows.par_chunks_mut(words).enumerate().for_each(|(i, row)| {
        for j in 0..n {
            if j != i && !qwc_masks(xs[i], zs[i], xs[j], zs[j]) {
                row[j / 64] |= 1 << (j % 64);
            }
        }
    });
    Ok(CompatibilityGraph { n, words, rows })
}

/// A clique cover: color classes of the conflict graph.
#[derive(Debug, Clone)]
pub struct Grouping {
    pub groups: Vec<Vec<usize>>,
}

impl Grouping {
    pub fn circuit_count(&self) -> usize {
        self.groups.len()
    }
}

/// Greedy sequential coloring, largest conflict degree first; each vertex
/// takes the lowest color unused by its conflict neighbors.
pub fn clique_cover(g: &CompatibilityGraph) -> Grouping {
    let n = g.n;
    let mut order: Vec<usize> = (0..n).collect();
    let degrees: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));

    let mut color = vec![usize::MAX; n];
    // used[c] == stamp marks color c as taken by a neighbor of the current vertex
    let mut used = vec![usize::MAX; n];
    let mut n_colors = 0usize;
    for (stamp, &v) in order.iter().enumerate() {
        for (w, &bits) in g.row(v).iter().enumerate() {
            let mut bits = bits;
            while bits != 0 {
                let u = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if color[u] != usize::MAX {
                    used[color[u]] = stamp;
                }
            }
        }
        let c = (0..n_colors + 1).find(|&c| used[c] != stamp).unwrap();
        color[v] = c;
        n_colors = n_colors.max(c + 1);
    }

    let mut groups = vec![Vec::new(); n_colors];
    for v in 0..n {
        groups[color[v]].push(v);
    }
    Grouping { groups }
}

/// Measurement-circuit basis for one group: the consensus X/Y letter on
/// every qubit some member touches non-diagonally, Z elsewhere.
pub fn circuit_basis(strings: &[PauliString], members: &[usize]) -> Result<PauliString> {
    let n = strings
        .first()
        .map(|s| s.n_qubits())
        .ok_or_else(|| Error::Config("empty string set".into()))?;
    let mut x = 0u64;
    let mut y = 0u64;
    for &m in members {
        let s = &strings[m];
        x |= s.x_mask() & !s.z_mask();
        y |= s.x_mask() & s.z_mask();
    }
    if x & y != 0 {
        return Err(Error::Config(
            "group members disagree on a basis letter".into(),
        ));
    }
    let z_fill = !(x | y) & if n == 64 { u64::MAX } else { (1 << n) - 1 };
    PauliString::from_masks(n, x | y, y | z_fill, num_complex::Complex64::new(1.0, 0.0))
}

/// Indices of the strings in canonical mask order. Grouping outcomes of
/// the degree-ordered greedy depend on vertex numbering at ties; sorting
/// by masks first makes the circuit count a function of the string SET.
pub fn canonical_order(strings: &[PauliString]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..strings.len()).collect();
    order.sort_by_key(|&i| (strings[i].x_mask(), strings[i].z_mask()));
    order
}

/// Circuit count of a string set under the greedy cover, with vertices
/// numbered canonically.
pub fn grouped_circuit_count(strings: &[PauliString]) -> Result<usize> {
    let order = canonical_order(strings);
    let sorted: Vec<PauliString> = order.iter().map(|&i| strings[i]).collect();
    Ok(clique_cover(&build_graph(&sorted)?).circuit_count())
}

/// Power-law fit of circuit counts against qubit count: least squares on
/// log-log points, exponent = slope.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub exponent: f64,
    pub prefactor: f64,
}

pub fn scaling_fit(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(Error::BadFitInput(points.len()));
    }
    for &(r, count) in points {
        if r <= 0.0 || count <= 0.0 {
            return Err(Error::BadFitInput(points.len()));
        }
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(r, c)| (r.ln(), c.ln())).collect();
    let n = logs.len() as f64;
    let sx: f64 = logs.iter().map(|p| p.0).sum();
    let sy: f64 = logs.iter().map(|p| p.1).sum();
    let sxx: f64 = logs.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = logs.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    Ok(ScalingFit {
        exponent: slope,
        prefactor: intercept.exp(),
    })
}

/// Letter-level view of a circuit basis string for display.
pub fn basis_letters(p: &PauliString) -> Vec<Letter> {
    (0..p.n_qubits()).map(|q| p.letter(q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn ps(label: &str) -> PauliString {
        PauliString::from_label(label, Complex64::new(1.0, 0.0)).unwrap()
    }

    #[test]
    fn graph_edges_match_examples() {
        let g = build_graph(&[ps("XX"), ps("XY")]).unwrap();
        assert!(g.conflicts(0, 1));
        assert_eq!(g.degree(0), 1);

        let g = build_graph(&[ps("ZZ"), ps("ZI"), ps("IZ")]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(!g.conflicts(i, j));
            }
        }
    }

    #[test]
    fn cover_limits() {
        // complete conflict graph -> one group per vertex
        let g = build_graph(&[ps("XX"), ps("YY"), ps("ZZ"), ps("XY")]).unwrap();
        let cover = clique_cover(&g);
        assert_eq!(cover.circuit_count(), 4);

        // edgeless graph -> a single group
        let g = build_graph(&[ps("ZZ"), ps("ZI"), ps("IZ"), ps("II")]).unwrap();
        let cover = clique_cover(&g);
        assert_eq!(cover.circuit_count(), 1);
    }

    #[test]
    fn groups_are_qubitwise_commuting() {
        let strings: Vec<PauliString> = ["XXII", "XYII", "ZZXX", "ZZYX", "XXXX", "ZZZZ", "IIII"]
            .iter()
            .map(|l| ps(l))
            .collect();
        let g = build_graph(&strings).unwrap();
        let cover = clique_cover(&g);
        for group in &cover.groups {
            for (a, &i) in group.iter().enumerate() {
                for &j in &group[a + 1..] {
                    assert!(strings[i].qubitwise_commutes(&strings[j]).unwrap());
                }
            }
        }
        // greedy bound: colors <= max conflict degree + 1
        let max_deg = (0..g.n).map(|i| g.degree(i)).max().unwrap();
        assert!(cover.circuit_count() <= max_deg + 1);
    }

    #[test]
    fn circuit_basis_consensus() {
        let strings = vec![ps("XXII"), ps("XXZI"), ps("IIZZ")];
        let basis = circuit_basis(&strings, &[0, 1, 2]).unwrap();
        assert_eq!(basis.label(), "XXZZ");
    }

    #[test]
    fn published_measurement_sets_group_one_to_one() {
        // The listed 25-circuit and 9-circuit measurement sets for the
        // 4-qubit two-electron study assign a basis to every qubit, so no
        // pair is qubit-wise compatible and each set covers itself.
        let naive: Vec<PauliString> = [
            "YXZZ", "XXZZ", "YYZZ", "XYZZ", "ZZYX", "ZZXX", "ZZYY", "ZZXY", "YXYX", "XXYX", "YYYX",
            "XYYX", "YXXX", "XXXX", "YYXX", "XYXX", "YXYY", "XXYY", "YYYY", "XYYY", "YXXY", "XXXY",
            "YYXY", "XYXY", "ZZZZ",
        ]
        .iter()
        .map(|l| ps(l))
        .collect();
        let cover = clique_cover(&build_graph(&naive).unwrap());
        assert_eq!(cover.circuit_count(), 25);

        let reduced: Vec<PauliString> = [
            "XXZZ", "YXZZ", "ZZXX", "ZZYX", "XXXX", "XXYX", "YXXX", "YXYX", "ZZZZ",
        ]
        .iter()
        .map(|l| ps(l))
        .collect();
        let cover = clique_cover(&build_graph(&reduced).unwrap());
        assert_eq!(cover.circuit_count(), 9);
    }

    #[test]
    fn fit_exact_power_laws() {
        let fit = scaling_fit(&[(4.0, 16.0), (8.0, 64.0), (16.0, 256.0)]).unwrap();
        assert!((fit.exponent - 2.0).abs() < 1e-12);
        let fit = scaling_fit(&[(4.0, 256.0), (8.0, 4096.0), (16.0, 65536.0)]).unwrap();
        assert!((fit.exponent - 4.0).abs() < 1e-12);
        assert!(scaling_fit(&[(4.0, 16.0), (8.0, 64.0)]).is_err());
        assert!(scaling_fit(&[(4.0, 0.0), (8.0, 64.0), (16.0, 256.0)]).is_err());
    }
}
