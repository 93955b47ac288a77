//! Coxeter–Vinberg diagrams: bond types, the finite/affine catalog,
//! automorphisms, the finite-volume criterion and renderers.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bond {
    None,
    Single,
    Double,
    Triple,
    #[serde(rename = "inf")]
    Parallel,
    #[serde(rename = "dotted")]
    Ultraparallel,
}

impl Bond {
    /// Bond type from `c = (r_i, r_j)² / (q(r_i)·q(r_j))`.
    pub fn from_c(c: &BigRational) -> Result<Bond> {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let one = q(1, 1);
        let bond = if c == &q(0, 1) {
            Bond::None
        } else if c == &q(1, 4) {
            Bond::Single
        } else if c == &q(1, 2) {
            Bond::Double
        } else if c == &q(3, 4) {
            Bond::Triple
        } else if c == &one {
            Bond::Parallel
        } else if c > &one {
            Bond::Ultraparallel
        } else {
            return Err(Error::IllegalAngle(c.to_string()));
        };
        Ok(bond)
    }

    pub fn name(self) -> &'static str {
        match self {
            Bond::None => "none",
            Bond::Single => "single",
            Bond::Double => "double",
            Bond::Triple => "triple",
            Bond::Parallel => "inf",
            Bond::Ultraparallel => "dotted",
        }
    }

    fn ascii(self) -> &'static str {
        match self {
            Bond::None => "   ",
            Bond::Single => "---",
            Bond::Double => "===",
            Bond::Triple => "#=#",
            Bond::Parallel => "-oo-",
            Bond::Ultraparallel => "...",
        }
    }

    /// Coxeter label `m` of the dihedral angle `π/m`, for finite bonds.
    pub fn order(self) -> Option<u32> {
        match self {
            Bond::None => Some(2),
            Bond::Single => Some(3),
            Bond::Double => Some(4),
            Bond::Triple => Some(6),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub label: String,
    pub norm: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDiagram {
    pub nodes: Vec<Node>,
    bonds: Vec<Vec<Bond>>,
}

/// Serialized form: nodes plus the list of non-trivial bonds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramSpec {
    pub labels: Vec<String>,
    pub norms: Vec<i64>,
    pub bonds: Vec<(usize, usize, Bond)>,
}

impl CoxeterDiagram {
    pub fn new(nodes: Vec<Node>) -> Self {
        let n = nodes.len();
        CoxeterDiagram {
            nodes,
            bonds: vec![vec![Bond::None; n]; n],
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.bonds[i][j]
    }

    pub fn set_bond(&mut self, i: usize, j: usize, b: Bond) {
        assert_ne!(i, j, "no self bonds");
        self.bonds[i][j] = b;
        self.bonds[j][i] = b;
    }

    pub fn norms(&self) -> Vec<i64> {
        self.nodes.iter().map(|n| n.norm).collect()
    }

    /// Non-trivial bonds `(i, j, bond)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, Bond)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.bonds[i][j] != Bond::None {
                    out.push((i, j, self.bonds[i][j]));
                }
            }
        }
        out
    }

    pub fn count_bonds(&self, b: Bond) -> usize {
        self.edges().iter().filter(|e| e.2 == b).count()
    }

    pub fn to_spec(&self) -> DiagramSpec {
        DiagramSpec {
            labels: self.nodes.iter().map(|n| n.label.clone()).collect(),
            norms: self.norms(),
            bonds: self.edges(),
        }
    }

    pub fn from_spec(spec: &DiagramSpec) -> Result<Self> {
        if spec.labels.len() != spec.norms.len() {
            return Err(Error::Dimension {
                expected: spec.labels.len(),
                got: spec.norms.len(),
            });
        }
        let nodes = spec
            .labels
            .iter()
            .zip(&spec.norms)
            .map(|(l, &n)| Node {
                label: l.clone(),
                norm: n,
            })
            .collect();
        let mut d = CoxeterDiagram::new(nodes);
        for &(i, j, b) in &spec.bonds {
            if i >= d.len() || j >= d.len() || i == j {
                return Err(Error::Data(format!("bad bond ({i}, {j})")));
            }
            d.set_bond(i, j, b);
        }
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("diagram serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: DiagramSpec = serde_json::from_str(s).map_err(|e| Error::Data(e.to_string()))?;
        CoxeterDiagram::from_spec(&spec)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph {} {{", dot_id(name));
        let _ = writeln!(s, "  node [shape=circle];");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{} [label=\"{}\\n{}\"];", i, n.label, n.norm);
        }
        for (i, j, b) in self.edges() {
            let attrs = match b {
                Bond::None => unreachable!(),
                Bond::Single => "style=solid",
                Bond::Double => "style=solid, color=\"black:black\"",
                Bond::Triple => "style=solid, color=\"black:black:black\"",
                Bond::Parallel => "style=solid, label=\"inf\"",
                Bond::Ultraparallel => "style=dashed",
            };
            let _ = writeln!(s, "  n{i} -- n{j} [{attrs}];");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_ascii(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}: {} nodes", name, self.len());
        let w = self.nodes.iter().map(|n| n.label.len()).max().unwrap_or(0);
        for n in &self.nodes {
            let _ = writeln!(s, "  {:<w$}  norm {}", n.label, n.norm);
        }
        let edges = self.edges();
        let _ = writeln!(s, "bonds:");
        if edges.is_empty() {
            let _ = writeln!(s, "  (none)");
        }
        for (i, j, b) in edges {
            let (a, c) = (&self.nodes[i].label, &self.nodes[j].label);
            let _ = writeln!(s, "  {:<w$} {:<4} {:<w$}  {}", a, b.ascii(), c, b.name());
        }
        s
    }

    /// Diagram restricted to a node subset, re-indexed in the given order.
    pub fn subdiagram(&self, subset: &[usize]) -> CoxeterDiagram {
        let nodes = subset.iter().map(|&i| self.nodes[i].clone()).collect();
        let mut d = CoxeterDiagram::new(nodes);
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                if a < b {
                    d.set_bond(a, b, self.bonds[i][j]);
                }
            }
        }
        d
    }

    /// Connected components of the node subset, each sorted.
    pub fn components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &s in subset {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for &u in subset {
                    if !seen.contains(&u) && self.bonds[v][u] != Bond::None {
                        seen.insert(u);
                        comp.push(u);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

fn dot_id(name: &str) -> String {
    if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('"', "\\\""))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    Elliptic(String),
    Parabolic(String),
}

/// Catalog lookup for a connected subdiagram. Returns `None` for anything
/// that is neither a finite nor an affine Coxeter diagram (within the bond
/// set available here, which has no π/5 bonds, so the H and I types do not
/// occur).
pub fn classify_connected(d: &CoxeterDiagram, nodes: &[usize]) -> Option<Kind> {
    let m = nodes.len();
    let mut edges = Vec::new();
    for (a, &i) in nodes.iter().enumerate() {
        for &j in &nodes[a + 1..] {
            let b = d.bond(i, j);
            if b != Bond::None {
                edges.push((i, j, b));
            }
        }
    }
    if edges.iter().any(|e| e.2 == Bond::Ultraparallel) {
        return None;
    }
    if edges.iter().any(|e| e.2 == Bond::Parallel) {
        return (m == 2).then(|| Kind::Parabolic("~A1".into()));
    }
    if m == 1 {
        return Some(Kind::Elliptic("A1".into()));
    }
    let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
    let bond_between = |u: usize, v: usize| d.bond(u, v);
    if edges.len() == m {
        let cycle =
            nodes.iter().all(|&v| degree(v) == 2) && edges.iter().all(|e| e.2 == Bond::Single);
        return (cycle && m >= 3).then(|| Kind::Parabolic(format!("~A{}", m - 1)));
    }
    if edges.len() != m - 1 {
        return None;
    }
    // tree from here on
    let triples = edges.iter().filter(|e| e.2 == Bond::Triple).count();
    let doubles = edges.iter().filter(|e| e.2 == Bond::Double).count();
    let branch: Vec<usize> = nodes.iter().copied().filter(|&v| degree(v) >= 3).collect();
    let neighbours = |v: usize| -> Vec<usize> {
        nodes
            .iter()
            .copied()
            .filter(|&u| u != v && bond_between(v, u) != Bond::None)
            .collect()
    };

    if branch.is_empty() {
        let ends: Vec<usize> = nodes.iter().copied().filter(|&v| degree(v) == 1).collect();
        let mut path = vec![ends[0]];
        while path.len() < m {
            let last = *path.last().unwrap();
            let next = neighbours(last)
                .into_iter()
                .find(|u| !path.contains(u))
                .unwrap();
            path.push(next);
        }
        let seq: Vec<Bond> = path.windows(2).map(|w| bond_between(w[0], w[1])).collect();
        let last = seq.len() - 1;
        if triples > 1 || (triples == 1 && doubles > 0) {
            return None;
        }
        if triples == 1 {
            return match m {
                2 => Some(Kind::Elliptic("G2".into())),
                3 => Some(Kind::Parabolic("~G2".into())),
                _ => None,
            };
        }
        let pos: Vec<usize> = (0..seq.len()).filter(|&k| seq[k] == Bond::Double).collect();
        return match pos.as_slice() {
            [] => Some(Kind::Elliptic(format!("A{m}"))),
            [p] if *p == 0 || *p == last => Some(Kind::Elliptic(format!("B{m}"))),
            [1] if m == 4 => Some(Kind::Elliptic("F4".into())),
            [p] if m == 5 && (*p == 1 || *p == 2) => Some(Kind::Parabolic("~F4".into())),
            [0, p] if *p == last && m >= 3 => Some(Kind::Parabolic(format!("~C{}", m - 1))),
            _ => None,
        };
    }
    if triples > 0 || doubles > 1 {
        return None;
    }
    // arm lengths and whether the arm ends in a double bond
    let arms = |center: usize, blocked: &[usize]| -> Vec<(usize, bool, bool)> {
        let mut out = Vec::new();
        for start in neighbours(center) {
            if blocked.contains(&start) {
                continue;
            }
            let mut prev = center;
            let mut cur = start;
            let mut len = 1;
            let mut has_double = bond_between(center, start) == Bond::Double;
            let mut double_at_end = false;
            loop {
                let next: Vec<usize> = neighbours(cur).into_iter().filter(|&u| u != prev).collect();
                if next.len() != 1 {
                    if next.is_empty() {
                        double_at_end = bond_between(prev, cur) == Bond::Double;
                    } else {
                        // reached another branch node
                        len = usize::MAX;
                    }
                    break;
                }
                has_double |= bond_between(cur, next[0]) == Bond::Double;
                prev = cur;
                cur = next[0];
                len += 1;
            }
            out.push((len, has_double, double_at_end));
        }
        out
    };
    match branch.as_slice() {
        [c] if degree(*c) == 3 => {
            let mut a = arms(*c, &[]);
            a.sort();
            let lens: Vec<usize> = a.iter().map(|x| x.0).collect();
            if doubles == 0 {
                return match lens.as_slice() {
                    [1, 1, k] => Some(Kind::Elliptic(format!("D{}", k + 3))),
                    [1, 2, 2] => Some(Kind::Elliptic("E6".into())),
                    [1, 2, 3] => Some(Kind::Elliptic("E7".into())),
                    [1, 2, 4] => Some(Kind::Elliptic("E8".into())),
                    [2, 2, 2] => Some(Kind::Parabolic("~E6".into())),
                    [1, 3, 3] => Some(Kind::Parabolic("~E7".into())),
                    [1, 2, 5] => Some(Kind::Parabolic("~E8".into())),
                    _ => None,
                };
            }
            // ~B_n: arms (1, 1, k), the long arm ending in the double bond
            let ok = lens[0] == 1 && lens[1] == 1 && {
                let dbl: Vec<&(usize, bool, bool)> = a.iter().filter(|x| x.1).collect();
                dbl.len() == 1 && dbl[0].2 && (dbl[0].0 == lens[2])
            };
            ok.then(|| Kind::Parabolic(format!("~B{}", m - 1)))
        }
        [c] if degree(*c) == 4 => {
            let a = arms(*c, &[]);
            (doubles == 0 && m == 5 && a.iter().all(|x| x.0 == 1))
                .then(|| Kind::Parabolic("~D4".into()))
        }
        [c1, c2] if doubles == 0 && degree(*c1) == 3 && degree(*c2) == 3 => {
            let leaves = |c: usize| arms(c, &[]).iter().filter(|x| x.0 == 1).count();
            (leaves(*c1) >= 2 && leaves(*c2) >= 2 && m >= 6)
                .then(|| Kind::Parabolic(format!("~D{}", m - 1)))
        }
        _ => None,
    }
}

/// Component-wise classification of a node subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubdiagramType {
    Elliptic { rank: usize, types: Vec<String> },
    Parabolic { rank: usize, types: Vec<String> },
    Other,
}

pub fn classify_subdiagram(d: &CoxeterDiagram, subset: &[usize]) -> SubdiagramType {
    let comps = d.components(subset);
    let kinds: Vec<Option<Kind>> = comps.iter().map(|c| classify_connected(d, c)).collect();
    if kinds.iter().all(|k| matches!(k, Some(Kind::Elliptic(_)))) {
        let types = kinds
            .into_iter()
            .map(|k| {
                if let Some(Kind::Elliptic(t)) = k {
                    t
                } else {
                    unreachable!()
                }
            })
            .collect();
        return SubdiagramType::Elliptic {
            rank: subset.len(),
            types,
        };
    }
    if kinds.iter().all(|k| matches!(k, Some(Kind::Parabolic(_)))) {
        let types = kinds
            .into_iter()
            .map(|k| {
                if let Some(Kind::Parabolic(t)) = k {
                    t
                } else {
                    unreachable!()
                }
            })
            .collect();
        return SubdiagramType::Parabolic {
            rank: subset.len() - comps.len(),
            types,
        };
    }
    SubdiagramType::Other
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Vinberg's criterion for a polytope in hyperbolic `n`-space: there is at
/// least one vertex, and every elliptic subdiagram of rank `n-1` extends in
/// exactly two ways to an elliptic subdiagram of rank `n` or a parabolic
/// subdiagram of rank `n-1`.
pub fn finite_volume_check(d: &CoxeterDiagram, n: usize) -> bool {
    finite_volume_report(d, n).ok
}

#[derive(Clone, Debug)]
pub struct VolumeReport {
    pub ok: bool,
    pub vertices: usize,
    pub edges_checked: usize,
    pub bad_edge: Option<(Vec<usize>, usize)>,
}

pub fn finite_volume_report(d: &CoxeterDiagram, n: usize) -> VolumeReport {
    let total = d.len();
    let mut vertices = 0;
    let is_elliptic_rank = |s: &[usize], r: usize| matches!(classify_subdiagram(d, s), SubdiagramType::Elliptic { rank, .. } if rank == r);
    let is_parabolic_rank = |s: &[usize], r: usize| matches!(classify_subdiagram(d, s), SubdiagramType::Parabolic { rank, .. } if rank == r);
    for s in subsets(total, n) {
        if is_elliptic_rank(&s, n) {
            vertices += 1;
        }
    }
    for k in n..=total.min(2 * (n - 1)) {
        for s in subsets(total, k) {
            if is_parabolic_rank(&s, n - 1) {
                vertices += 1;
            }
        }
    }
    if vertices == 0 || n < 2 {
        return VolumeReport {
            ok: false,
            vertices,
            edges_checked: 0,
            bad_edge: None,
        };
    }
    let mut edges_checked = 0;
    for s in subsets(total, n - 1) {
        if !is_elliptic_rank(&s, n - 1) {
            continue;
        }
        edges_checked += 1;
        let rest: Vec<usize> = (0..total).filter(|i| !s.contains(i)).collect();
        let mut count = 0;
        for extra in 1..=rest.len().min(n - 1) {
            for pick in subsets(rest.len(), extra) {
                let mut u = s.clone();
                u.extend(pick.iter().map(|&p| rest[p]));
                u.sort_unstable();
                if (extra == 1 && is_elliptic_rank(&u, n)) || is_parabolic_rank(&u, n - 1) {
                    count += 1;
                }
            }
        }
        if count != 2 {
            return VolumeReport {
                ok: false,
                vertices,
                edges_checked,
                bad_edge: Some((s, count)),
            };
        }
    }
    VolumeReport {
        ok: true,
        vertices,
        edges_checked,
        bad_edge: None,
    }
}

/// A node permutation preserving bonds (and norms, when flagged).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramSymmetry {
    pub permutation: Vec<usize>,
    pub respects_norms: bool,
}

impl DiagramSymmetry {
    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn is_involution(&self) -> bool {
        self.permutation
            .iter()
            .enumerate()
            .all(|(i, &p)| self.permutation[p] == i)
    }
}

/// All bond-preserving node bijections `a → b`, in lexicographic order.
pub fn isomorphisms(
    a: &CoxeterDiagram,
    b: &CoxeterDiagram,
    respect_norms: bool,
) -> Vec<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return Vec::new();
    }
    let profile = |d: &CoxeterDiagram, i: usize| -> Vec<Bond> {
        let mut p: Vec<Bond> = (0..d.len())
            .filter(|&j| j != i)
            .map(|j| d.bond(i, j))
            .collect();
        p.sort();
        p
    };
    let pa: Vec<Vec<Bond>> = (0..n).map(|i| profile(a, i)).collect();
    let pb: Vec<Vec<Bond>> = (0..n).map(|i| profile(b, i)).collect();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        a: &CoxeterDiagram,
        b: &CoxeterDiagram,
        pa: &[Vec<Bond>],
        pb: &[Vec<Bond>],
        respect: bool,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = a.len();
        if i == n {
            out.push(perm.clone());
            return;
        }
        for t in 0..n {
            if used[t] || pa[i] != pb[t] || (respect && a.nodes[i].norm != b.nodes[t].norm) {
                continue;
            }
            if (0..i).any(|j| a.bond(i, j) != b.bond(t, perm[j])) {
                continue;
            }
            perm[i] = t;
            used[t] = true;
            rec(i + 1, a, b, pa, pb, respect, perm, used, out);
            used[t] = false;
            perm[i] = usize::MAX;
        }
    }
    rec(
        0,
        a,
        b,
        &pa,
        &pb,
        respect_norms,
        &mut perm,
        &mut used,
        &mut out,
    );
    out
}

pub fn diagram_symmetries(d: &CoxeterDiagram, respect_norms: bool) -> Vec<DiagramSymmetry> {
    isomorphisms(d, d, respect_norms)
        .into_iter()
        .map(|permutation| DiagramSymmetry {
            permutation,
            respects_norms: respect_norms,
        })
        .collect()
}

pub fn isomorphic(
    a: &CoxeterDiagram,
    b: &CoxeterDiagram,
    respect_norms: bool,
) -> Option<Vec<usize>> {
    isomorphisms(a, b, respect_norms).into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(bonds: &[Bond]) -> CoxeterDiagram {
        let n = bonds.len() + 1;
        let nodes = (0..n)
            .map(|i| Node {
                label: format!("x{i}"),
                norm: -2,
            })
            .collect();
        let mut d = CoxeterDiagram::new(nodes);
        for (k, &b) in bonds.iter().enumerate() {
            d.set_bond(k, k + 1, b);
        }
        d
    }

    fn kind(d: &CoxeterDiagram) -> Option<Kind> {
        let all: Vec<usize> = (0..d.len()).collect();
        classify_connected(d, &all)
    }

    use Bond::*;

    #[test]
    fn catalog_paths() {
        assert_eq!(
            kind(&path(&[Single, Single])),
            Some(Kind::Elliptic("A3".into()))
        );
        assert_eq!(
            kind(&path(&[Single, Double])),
            Some(Kind::Elliptic("B3".into()))
        );
        assert_eq!(
            kind(&path(&[Single, Double, Single])),
            Some(Kind::Elliptic("F4".into()))
        );
        assert_eq!(
            kind(&path(&[Single, Single, Double, Single])),
            Some(Kind::Parabolic("~F4".into()))
        );
        assert_eq!(
            kind(&path(&[Double, Double])),
            Some(Kind::Parabolic("~C2".into()))
        );
        assert_eq!(kind(&path(&[Triple])), Some(Kind::Elliptic("G2".into())));
        assert_eq!(
            kind(&path(&[Single, Triple])),
            Some(Kind::Parabolic("~G2".into()))
        );
        assert_eq!(
            kind(&path(&[Parallel])),
            Some(Kind::Parabolic("~A1".into()))
        );
        assert_eq!(
            kind(&path(&[Single, Double, Single, Single, Single])),
            Option::None
        );
    }

    #[test]
    fn catalog_branched() {
        // D4: centre 0 with three leaves
        let nodes = (0..4)
            .map(|i| Node {
                label: format!("x{i}"),
                norm: -2,
            })
            .collect();
        let mut d = CoxeterDiagram::new(nodes);
        for k in 1..4 {
            d.set_bond(0, k, Single);
        }
        assert_eq!(kind(&d), Some(Kind::Elliptic("D4".into())));
        d.set_bond(0, 3, Double);
        assert_eq!(kind(&d), Some(Kind::Parabolic("~B3".into())));
    }

    #[test]
    fn bond_table() {
        let q = |n, d| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(Bond::from_c(&q(0, 1)).unwrap(), None);
        assert_eq!(Bond::from_c(&q(1, 2)).unwrap(), Double);
        assert_eq!(Bond::from_c(&q(9, 4)).unwrap(), Ultraparallel);
        assert!(Bond::from_c(&q(1, 3)).is_err());
    }

    #[test]
    fn single_node_has_no_finite_volume() {
        let d = CoxeterDiagram::new(vec![Node {
            label: "r".into(),
            norm: -2,
        }]);
        assert!(!finite_volume_check(&d, 5));
    }

    #[test]
    fn json_round_trip() {
        let d = path(&[Single, Double, Parallel]);
        assert_eq!(CoxeterDiagram::from_json(&d.to_json()).unwrap(), d);
    }
}
