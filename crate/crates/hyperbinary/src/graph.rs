//! The edge-coloured, vertex-weighted DAG A(n) = (H(n), E(n)), its
//! structural analytics, decompositions and closed-form classification.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::expansion::{
    binary_expansion, count_expansions, enumerate_expansions, floor_log2, minimal_expansion,
    CountTable, Expansion, LengthClass,
};
use crate::rewrite::{children, is_backward_irreducible, is_forward_irreducible, ArcColor};

/// An arc of A(n), stored by node index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub source: usize,
    pub target: usize,
    pub color: ArcColor,
    pub position: isize,
}

/// The graph A(n). Nodes are laid out row-major: row r holds the nodes of
/// weight ω(root) − r, sorted in decreasing shortlex order, so the node
/// order (and any output derived from it) is deterministic.
#[derive(Debug, Clone)]
pub struct HyperGraph {
    pub n: u64,
    pub nodes: Vec<Expansion>,
    pub arcs: Vec<Arc>,
    pub root: usize,
    pub sink: usize,
    pub rows: Vec<Vec<usize>>,
    index: HashMap<Expansion, usize>,
}

impl HyperGraph {
    pub fn node_index(&self, e: &Expansion) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(move |a| a.source == v)
    }

    pub fn in_arcs(&self, v: usize) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(move |a| a.target == v)
    }

    pub fn outdegree(&self, v: usize) -> usize {
        self.out_arcs(v).count()
    }

    pub fn indegree(&self, v: usize) -> usize {
        self.in_arcs(v).count()
    }

    /// Row index of a node: ω(root) − ω(node).
    pub fn row_of(&self, v: usize) -> usize {
        (self.nodes[self.root].weight() - self.nodes[v].weight()) as usize
    }
}

/// Builds A(n): nodes from the parity-split enumeration, arcs from the
/// rewrite engine, cross-checked against the BFS closure of `children`
/// starting at the minimal expansion.
pub fn build_graph(n: u64) -> Result<HyperGraph> {
    if n == 0 {
        return Err(Error::ZeroNotAllowed);
    }
    let enumerated = enumerate_expansions(n)?;
    let node_set: HashSet<&Expansion> = enumerated.iter().collect();

    // Independent closure: BFS over children from the root.
    let root_exp = minimal_expansion(n);
    let mut seen: HashSet<Expansion> = HashSet::new();
    let mut queue = VecDeque::from([root_exp.clone()]);
    seen.insert(root_exp.clone());
    while let Some(e) = queue.pop_front() {
        for step in children(&e) {
            if seen.insert(step.target.clone()) {
                queue.push_back(step.target);
            }
        }
    }
    if seen.len() != enumerated.len() || !seen.iter().all(|e| node_set.contains(e)) {
        return Err(Error::StructureMismatch(format!(
            "BFS closure of H({n}) disagrees with the direct enumeration"
        )));
    }

    // Row-major layout: row r = nodes of weight ω(root) − r, decreasing shortlex.
    let sink_exp = binary_expansion(n);
    let w_root = root_exp.weight();
    let w_sink = sink_exp.weight();
    let mut rows_exp: Vec<Vec<Expansion>> = vec![Vec::new(); (w_root - w_sink + 1) as usize];
    for e in enumerated {
        rows_exp[(w_root - e.weight()) as usize].push(e);
    }
    let mut nodes = Vec::new();
    let mut rows = Vec::new();
    for mut row in rows_exp {
        row.sort_by(|a, b| b.cmp(a));
        let start = nodes.len();
        rows.push((start..start + row.len()).collect());
        nodes.extend(row);
    }
    let index: HashMap<Expansion, usize> =
        nodes.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();

    let mut arcs = Vec::new();
    for (i, e) in nodes.iter().enumerate() {
        for step in children(e) {
            let j = index[&step.target];
            arcs.push(Arc {
                source: i,
                target: j,
                color: step.color,
                position: step.position,
            });
        }
    }

    let root = index[&root_exp];
    let sink = index[&sink_exp];
    let g = HyperGraph {
        n,
        nodes,
        arcs,
        root,
        sink,
        rows,
        index,
    };

    // Unique source / unique sink.
    for v in 0..g.nodes.len() {
        let src = g.indegree(v) == 0;
        let snk = g.outdegree(v) == 0;
        if src != is_backward_irreducible(&g.nodes[v]) || (src && v != root) {
            return Err(Error::StructureMismatch(format!("A({n}): root is not unique")));
        }
        if snk != is_forward_irreducible(&g.nodes[v]) || (snk && v != sink) {
            return Err(Error::StructureMismatch(format!("A({n}): sink is not unique")));
        }
    }
    Ok(g)
}

/// Circuit rank |E| − |V| + 1, cross-checked against Σ_{v ≠ sink}(outdeg(v) − 1).
pub fn cyclomatic_number(g: &HyperGraph) -> u64 {
    let by_count = (g.arcs.len() as u64) - (g.nodes.len() as u64 - 1);
    let by_outdeg: u64 = (0..g.nodes.len())
        .filter(|&v| v != g.sink)
        .map(|v| g.outdegree(v) as u64 - 1)
        .sum();
    assert_eq!(by_count, by_outdeg, "cyclomatic formulas disagree on A({})", g.n);
    by_count
}

/// Tree decomposition n = 2^(s+t+1) ± 2^s − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeParams {
    pub s: u32,
    pub t: u32,
    pub plus: bool,
}

impl fmt::Display for TreeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.plus { '+' } else { '-' };
        write!(f, "(s={}, t={}, {})", self.s, self.t, sign)
    }
}

/// Shape of the fundamental group of A(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pi1 {
    Trivial,
    FreeRankOne,
    Free(u64),
}

impl fmt::Display for Pi1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pi1::Trivial => write!(f, "trivial"),
            Pi1::FreeRankOne => write!(f, "Z"),
            Pi1::Free(r) => write!(f, "free(rank {r})"),
        }
    }
}

/// Verdict record for one integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub n: u64,
    pub b: u64,
    /// None when the graph was too large to build structurally and the
    /// closed forms leave the rank undetermined.
    pub cyclomatic: Option<u64>,
    pub is_tree: bool,
    pub tree_params: Option<TreeParams>,
    pub in_t: bool,
    pub pi1: Option<Pi1>,
    /// Whether the closed-form verdicts were cross-checked on the built graph.
    pub structural: bool,
}

fn is_power_of_two(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// Closed form of Theorem t2: n = 2^(s+t+1) ± 2^s − 1 with s, t ≥ 0.
///
/// Splitting n + 1 = 2^s · q with q odd, the plus form needs q = 2^(t+1)+1
/// and the minus form q = 2^(t+1)−1 (q = 1 is the minus form with t = 0).
/// q = 3 fits both; the plus form (t = 0) is reported.
pub fn tree_decomposition(n: u64) -> Option<TreeParams> {
    let s = (n + 1).trailing_zeros();
    let q = (n + 1) >> s;
    if q == 1 {
        return Some(TreeParams { s, t: 0, plus: false });
    }
    if q >= 3 && is_power_of_two(q - 1) {
        return Some(TreeParams {
            s,
            t: floor_log2(q - 1) - 1,
            plus: true,
        });
    }
    if is_power_of_two(q + 1) {
        return Some(TreeParams {
            s,
            t: floor_log2(q + 1) - 1,
            plus: false,
        });
    }
    None
}

/// Membership in T = { 2^ℓ·11 − 1, 2^ℓ·13 − 1 : ℓ ≥ 0 }, the integers
/// whose graph has cyclomatic number 1.
pub fn in_t(n: u64) -> bool {
    let s = (n + 1).trailing_zeros();
    let q = (n + 1) >> s;
    q == 11 || q == 13
}

/// Work-unit budget above which `classify` stops building the graph and
/// reports closed forms only.
pub const DEFAULT_CLASSIFY_BOUND: u64 = 1_000_000;

pub fn classify(n: u64) -> Result<Classification> {
    classify_with_bound(n, DEFAULT_CLASSIFY_BOUND)
}

/// Classifies n. When b(n)·(⌊log₂ n⌋+1) fits the work bound, the graph is
/// built and the structural verdicts are required to agree with the
/// closed forms; a disagreement is an error, not a silent repair.
pub fn classify_with_bound(n: u64, bound: u64) -> Result<Classification> {
    if n == 0 {
        return Err(Error::ZeroNotAllowed);
    }
    let mut table = CountTable::new();
    let b = count_expansions(n, &mut table);
    let params = tree_decomposition(n);
    let tree_closed = params.is_some();
    let t_member = in_t(n);

    let work = b.saturating_mul(u64::from(floor_log2(n)) + 1);
    if work <= bound {
        let g = build_graph(n)?;
        let v = cyclomatic_number(&g);
        if (v == 0) != tree_closed {
            return Err(Error::StructureMismatch(format!(
                "A({n}): structural tree verdict (v={v}) disagrees with closed form"
            )));
        }
        if (v == 1) != t_member {
            return Err(Error::StructureMismatch(format!(
                "A({n}): v = {v} disagrees with T-membership {t_member}"
            )));
        }
        let pi1 = match v {
            0 => Pi1::Trivial,
            1 => Pi1::FreeRankOne,
            r => Pi1::Free(r),
        };
        Ok(Classification {
            n,
            b,
            cyclomatic: Some(v),
            is_tree: v == 0,
            tree_params: params,
            in_t: t_member,
            pi1: Some(pi1),
            structural: true,
        })
    } else {
        let (cyclomatic, pi1) = if tree_closed {
            (Some(0), Some(Pi1::Trivial))
        } else if t_member {
            (Some(1), Some(Pi1::FreeRankOne))
        } else {
            (None, None)
        };
        Ok(Classification {
            n,
            b,
            cyclomatic,
            is_tree: tree_closed,
            tree_params: params,
            in_t: t_member,
            pi1,
            structural: false,
        })
    }
}

/// The node map ψ: x₁⋯x_k ↦ x₁⋯x_k 1 realizing A(m) ≅ A(2m+1).
/// Builds both graphs, checks ψ is a colour-preserving isomorphism, and
/// returns the node pairs.
pub fn double_plus_one_map(g: &HyperGraph) -> Result<Vec<(Expansion, Expansion)>> {
    let m = g.n;
    let h = build_graph(2 * m + 1)?;
    if g.nodes.len() != h.nodes.len() || g.arcs.len() != h.arcs.len() {
        return Err(Error::StructureMismatch(format!(
            "A({m}) and A({}) differ in size", 2 * m + 1
        )));
    }
    let mut pairs = Vec::with_capacity(g.nodes.len());
    let mut image = vec![usize::MAX; g.nodes.len()];
    for (i, e) in g.nodes.iter().enumerate() {
        let mut digits = e.digits().to_vec();
        digits.push(1);
        let psi = Expansion::new(&digits)?;
        let j = h.node_index(&psi).ok_or_else(|| {
            Error::StructureMismatch(format!("ψ({e}) = {psi} is not a node of A({})", 2 * m + 1))
        })?;
        image[i] = j;
        pairs.push((e.clone(), psi));
    }
    let mapped: HashSet<(usize, usize, ArcColor)> = g
        .arcs
        .iter()
        .map(|a| (image[a.source], image[a.target], a.color))
        .collect();
    let actual: HashSet<(usize, usize, ArcColor)> =
        h.arcs.iter().map(|a| (a.source, a.target, a.color)).collect();
    if mapped != actual {
        return Err(Error::StructureMismatch(format!(
            "ψ does not carry E({m}) onto E({})", 2 * m + 1
        )));
    }
    Ok(pairs)
}

/// The two halves of A(2m) and the arcs bridging them.
#[derive(Debug, Clone)]
pub struct EvenSplit {
    /// Nodes ending in digit 2: the copy of A(m−1).
    pub left: Vec<usize>,
    /// Nodes ending in digit 0: the copy of A(m).
    pub right: Vec<usize>,
    /// Indices into `arcs` of the left→right bridging arcs.
    pub bridging: Vec<usize>,
    /// The common colour of all bridging arcs: Single iff m is odd.
    pub bridge_color: Option<ArcColor>,
}

/// Splits A(2m) into its copies of A(m−1) (nodes ending in 2) and A(m)
/// (nodes ending in 0), verifying both induced subgraphs against freshly
/// built A(m−1) and A(m) via the drop-last-digit maps, and that all
/// bridging arcs share one colour.
pub fn even_split(g: &HyperGraph) -> Result<EvenSplit> {
    if g.n % 2 == 1 {
        return Err(Error::OddNotAllowed(g.n));
    }
    let m = g.n / 2;
    if m < 2 {
        return Err(Error::TooSmall(g.n));
    }

    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, e) in g.nodes.iter().enumerate() {
        match e.digits().last() {
            Some(2) => left.push(i),
            Some(0) => right.push(i),
            d => {
                return Err(Error::StructureMismatch(format!(
                    "node {e} of A({}) ends in {d:?}", g.n
                )))
            }
        }
    }
    // disjoint by construction; covering checked by the count
    if left.len() + right.len() != g.nodes.len() {
        return Err(Error::StructureMismatch(format!(
            "even split of A({}) does not cover all nodes", g.n
        )));
    }

    verify_half(g, &left, m - 1)?;
    verify_half(g, &right, m)?;

    let left_set: HashSet<usize> = left.iter().copied().collect();
    let right_set: HashSet<usize> = right.iter().copied().collect();
    let mut bridging = Vec::new();
    let mut bridge_color = None;
    for (k, a) in g.arcs.iter().enumerate() {
        if left_set.contains(&a.source) && right_set.contains(&a.target) {
            bridging.push(k);
            match bridge_color {
                None => bridge_color = Some(a.color),
                Some(c) if c == a.color => {}
                Some(c) => {
                    return Err(Error::StructureMismatch(format!(
                        "A({}): bridging arcs carry both {:?} and {:?}", g.n, c, a.color
                    )))
                }
            }
        } else if right_set.contains(&a.source) && left_set.contains(&a.target) {
            return Err(Error::StructureMismatch(format!(
                "A({}): arc from the A(m) half back into the A(m−1) half", g.n
            )));
        }
    }
    let expected = if m % 2 == 1 { ArcColor::Single } else { ArcColor::Double };
    if let Some(c) = bridge_color {
        if c != expected {
            return Err(Error::StructureMismatch(format!(
                "A({}): bridging colour {:?}, expected {:?}", g.n, c, expected
            )));
        }
    }
    Ok(EvenSplit {
        left,
        right,
        bridging,
        bridge_color,
    })
}

/// Checks that the subgraph of `g` induced by `part` is carried onto
/// A(target_n) by dropping the last digit, colours included.
fn verify_half(g: &HyperGraph, part: &[usize], target_n: u64) -> Result<()> {
    let target = build_graph(target_n)?;
    if part.len() != target.nodes.len() {
        return Err(Error::StructureMismatch(format!(
            "half of A({}) has {} nodes, A({target_n}) has {}",
            g.n,
            part.len(),
            target.nodes.len()
        )));
    }
    let mut image: HashMap<usize, usize> = HashMap::new();
    for &i in part {
        let d = g.nodes[i].digits();
        let stripped = Expansion::new(&d[..d.len() - 1])?;
        let j = target.node_index(&stripped).ok_or_else(|| {
            Error::StructureMismatch(format!(
                "{} stripped to {stripped} is not in H({target_n})", g.nodes[i]
            ))
        })?;
        image.insert(i, j);
    }
    let part_set: HashSet<usize> = part.iter().copied().collect();
    let mapped: HashSet<(usize, usize, ArcColor)> = g
        .arcs
        .iter()
        .filter(|a| part_set.contains(&a.source) && part_set.contains(&a.target))
        .map(|a| (image[&a.source], image[&a.target], a.color))
        .collect();
    let actual: HashSet<(usize, usize, ArcColor)> = target
        .arcs
        .iter()
        .map(|a| (a.source, a.target, a.color))
        .collect();
    if mapped != actual {
        return Err(Error::StructureMismatch(format!(
            "induced half of A({}) is not colour-isomorphic to A({target_n})", g.n
        )));
    }
    Ok(())
}

/// The long-expansion subgraph L(n) together with the map ξ realizing
/// L(n) ≅ A(n − 2^k), k = ⌊log₂ n⌋.
#[derive(Debug, Clone)]
pub struct LongSubgraph {
    /// Indices of the long nodes in the source graph.
    pub nodes: Vec<usize>,
    /// ξ pairs (long node, its image in A(n − 2^k)).
    pub map: Vec<(Expansion, Expansion)>,
    pub target: HyperGraph,
}

/// Extracts L(n) and verifies ξ (drop the leading 1, then the leading
/// zeros) is a colour-preserving isomorphism onto A(n − 2^k).
pub fn long_subgraph(g: &HyperGraph) -> Result<LongSubgraph> {
    let n = g.n;
    if is_power_of_two(n) {
        return Err(Error::PowerOfTwo(n));
    }
    let k = floor_log2(n);
    let target = build_graph(n - (1 << k))?;

    let mut long_nodes = Vec::new();
    let mut map = Vec::new();
    let mut image: HashMap<usize, usize> = HashMap::new();
    for (i, e) in g.nodes.iter().enumerate() {
        if e.length_class()? != LengthClass::Long {
            continue;
        }
        // long expansions start with 1 (a leading 2 forces a short word)
        let xi = Expansion::new(&e.digits()[1..])?;
        let j = target.node_index(&xi).ok_or_else(|| {
            Error::StructureMismatch(format!("ξ({e}) = {xi} is not in H({})", target.n))
        })?;
        long_nodes.push(i);
        image.insert(i, j);
        map.push((e.clone(), xi));
    }
    if long_nodes.len() != target.nodes.len() {
        return Err(Error::StructureMismatch(format!(
            "L({n}) has {} nodes, A({}) has {}",
            long_nodes.len(),
            target.n,
            target.nodes.len()
        )));
    }
    let long_set: HashSet<usize> = long_nodes.iter().copied().collect();
    let mapped: HashSet<(usize, usize, ArcColor)> = g
        .arcs
        .iter()
        .filter(|a| long_set.contains(&a.source) && long_set.contains(&a.target))
        .map(|a| (image[&a.source], image[&a.target], a.color))
        .collect();
    let actual: HashSet<(usize, usize, ArcColor)> = target
        .arcs
        .iter()
        .map(|a| (a.source, a.target, a.color))
        .collect();
    if mapped != actual {
        return Err(Error::StructureMismatch(format!(
            "L({n}) is not colour-isomorphic to A({})", target.n
        )));
    }
    Ok(LongSubgraph {
        nodes: long_nodes,
        map,
        target,
    })
}

/// ℓ(n) = b(n − 2^⌊log₂ n⌋), with b(0) = 1 so powers of two report 1.
pub fn long_count(n: u64, table: &mut CountTable) -> u64 {
    assert!(n >= 1);
    let k = floor_log2(n);
    count_expansions(n - (1 << k), table)
}

/// Colour-preserving digraph isomorphism test, backtracking row by row.
///
/// Nodes are matched within weight rows in row-major order; since every
/// arc goes from row r to row r+1, a candidate only has to reproduce the
/// in-arcs of already-mapped parents.
pub fn color_iso(g1: &HyperGraph, g2: &HyperGraph) -> bool {
    if g1.nodes.len() != g2.nodes.len()
        || g1.arcs.len() != g2.arcs.len()
        || g1.rows.len() != g2.rows.len()
        || g1
            .rows
            .iter()
            .zip(&g2.rows)
            .any(|(r1, r2)| r1.len() != r2.len())
    {
        return false;
    }

    fn signature(g: &HyperGraph, v: usize) -> (usize, usize, usize, usize, usize) {
        let os = g.out_arcs(v).filter(|a| a.color == ArcColor::Single).count();
        let od = g.out_arcs(v).filter(|a| a.color == ArcColor::Double).count();
        let is_ = g.in_arcs(v).filter(|a| a.color == ArcColor::Single).count();
        let id = g.in_arcs(v).filter(|a| a.color == ArcColor::Double).count();
        (g.row_of(v), os, od, is_, id)
    }

    let sig1: Vec<_> = (0..g1.nodes.len()).map(|v| signature(g1, v)).collect();
    let sig2: Vec<_> = (0..g2.nodes.len()).map(|v| signature(g2, v)).collect();

    // in-arc sets keyed by source and colour
    fn in_set(g: &HyperGraph, v: usize) -> HashSet<(usize, ArcColor)> {
        g.in_arcs(v).map(|a| (a.source, a.color)).collect()
    }

    let in1: Vec<_> = (0..g1.nodes.len()).map(|v| in_set(g1, v)).collect();
    let in2: Vec<_> = (0..g2.nodes.len()).map(|v| in_set(g2, v)).collect();

    // Nodes are already stored row-major in both graphs.
    let mut mapping = vec![usize::MAX; g1.nodes.len()];
    let mut used = vec![false; g2.nodes.len()];

    #[allow(clippy::too_many_arguments)]
    fn assign(
        v: usize,
        g1: &HyperGraph,
        g2: &HyperGraph,
        sig1: &[(usize, usize, usize, usize, usize)],
        sig2: &[(usize, usize, usize, usize, usize)],
        in1: &[HashSet<(usize, ArcColor)>],
        in2: &[HashSet<(usize, ArcColor)>],
        mapping: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v == g1.nodes.len() {
            return true;
        }
        let row = sig1[v].0;
        for &c in &g2.rows[row] {
            if used[c] || sig2[c] != sig1[v] {
                continue;
            }
            let expected: HashSet<(usize, ArcColor)> = in1[v]
                .iter()
                .map(|&(u, col)| (mapping[u], col))
                .collect();
            if expected != in2[c] {
                continue;
            }
            mapping[v] = c;
            used[c] = true;
            if assign(v + 1, g1, g2, sig1, sig2, in1, in2, mapping, used) {
                return true;
            }
            mapping[v] = usize::MAX;
            used[c] = false;
        }
        false
    }

    assign(0, g1, g2, &sig1, &sig2, &in1, &in2, &mut mapping, &mut used)
}
