//! Stable dual graphs of nodal curves: stability and genus bookkeeping,
//! canonical forms and automorphism counts, and enumeration of all
//! isomorphism classes for a fixed (genus, marking) pair.
//!
//! A graph has one vertex per irreducible component (weighted by its
//! geometric genus), one edge per node (loops allowed), and one labeled leg
//! per marked point. Loops contribute 2 to the valence of their vertex, and
//! a loop's half-edge swap counts as an automorphism.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

/// Largest genus supported by [`enumerate_strata`].
pub const STRATA_GENUS_MAX: u32 = 2;
/// Largest marking count supported by [`enumerate_strata`].
pub const STRATA_MARKINGS_MAX: u32 = 5;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("vertex index {0} out of range for {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("leg labels must be exactly 1..=n, each used once")]
    BadLegLabels,
    #[error("graph is not connected")]
    Disconnected,
    #[error("(g, n) = ({0}, {1}) violates 2g - 2 + n > 0")]
    UnstablePair(u32, u32),
    #[error("(g, n) = ({0}, {1}) outside the supported window g <= {2}, n <= {3}")]
    OutOfWindow(u32, u32, u32, u32),
    #[error("cannot parse graph record: {0}")]
    Parse(String),
}

/// Dual graph of a nodal curve: vertex genera, an edge multiset over
/// unordered vertex pairs (equal pair = loop), and a leg map from marking
/// labels to vertices.
///
/// The derived ordering (genera, then edges, then legs) is the total order
/// minimized during canonicalization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableGraph {
    genera: Vec<u32>,
    /// normalized (u <= v) and sorted
    edges: Vec<(usize, usize)>,
    legs: BTreeMap<u32, usize>,
}

impl StableGraph {
    pub fn new(
        genera: Vec<u32>,
        edges: Vec<(usize, usize)>,
        legs: BTreeMap<u32, usize>,
    ) -> Result<Self, GraphError> {
        let k = genera.len();
        if k == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        for &(u, v) in &edges {
            if u >= k {
                return Err(GraphError::VertexOutOfRange(u, k));
            }
            if v >= k {
                return Err(GraphError::VertexOutOfRange(v, k));
            }
        }
        edges.sort_unstable();
        for (&label, &v) in &legs {
            if v >= k {
                return Err(GraphError::VertexOutOfRange(v, k));
            }
            if label == 0 {
                return Err(GraphError::BadLegLabels);
            }
        }
        let n = legs.len() as u32;
        if !legs.keys().copied().eq(1..=n) {
            return Err(GraphError::BadLegLabels);
        }
        Ok(StableGraph { genera, edges, legs })
    }

    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_legs(&self) -> u32 {
        self.legs.len() as u32
    }

    pub fn vertex_genus(&self, v: usize) -> u32 {
        self.genera[v]
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn legs(&self) -> &BTreeMap<u32, usize> {
        &self.legs
    }

    /// Edge-ends plus legs at a vertex; a loop contributes 2.
    pub fn valence(&self, v: usize) -> usize {
        let mut val = self.legs.values().filter(|&&w| w == v).count();
        for &(a, b) in &self.edges {
            if a == v {
                val += 1;
            }
            if b == v {
                val += 1;
            }
        }
        val
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    /// Every vertex must satisfy 2 g_v - 2 + valence > 0.
    pub fn is_stable(&self) -> bool {
        (0..self.num_vertices())
            .all(|v| 2 * i64::from(self.genera[v]) - 2 + self.valence(v) as i64 > 0)
    }

    pub fn is_connected(&self) -> bool {
        let k = self.num_vertices();
        let mut adj = vec![Vec::new(); k];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Total (arithmetic) genus: sum of vertex genera plus the first Betti
    /// number of the graph. Errors on disconnected input.
    pub fn total_genus(&self) -> Result<u32, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let sum: u32 = self.genera.iter().sum();
        let betti = self.num_edges() as i64 - self.num_vertices() as i64 + 1;
        Ok((i64::from(sum) + betti) as u32)
    }

    /// Serialized record, byte-exact under parse -> display.
    pub fn to_record(&self) -> String {
        let vertices = self.genera.iter().map(|g| g.to_string()).join(",");
        let edges = self.edges.iter().map(|(u, v)| format!("({u},{v})")).join(",");
        let legs = self.legs.iter().map(|(l, v)| format!("{l}:{v}")).join(",");
        format!("vertices=[{vertices}];edges=[{edges}];legs=[{legs}]")
    }

    /// Vertex colors refined from (genus, attached legs) by neighbor
    /// multisets until stable. Color ids are ranks of structural signatures,
    /// so they are independent of the vertex numbering.
    fn refined_colors(&self) -> Vec<usize> {
        let k = self.num_vertices();
        let mut sigs: Vec<Vec<u64>> = (0..k)
            .map(|v| {
                let mut sig = vec![u64::from(self.genera[v])];
                sig.extend(
                    self.legs
                        .iter()
                        .filter(|&(_, &w)| w == v)
                        .map(|(&l, _)| u64::from(l)),
                );
                sig
            })
            .collect();
        let mut colors = rank_signatures(&sigs);
        let mut distinct = colors.iter().copied().max().unwrap_or(0) + 1;
        loop {
            sigs = (0..k)
                .map(|v| {
                    let mut sig = vec![colors[v] as u64, self.loops_at(v) as u64];
                    let mut neighbors: Vec<u64> = self
                        .edges
                        .iter()
                        .filter(|&&(a, b)| a != b)
                        .flat_map(|&(a, b)| {
                            if a == v {
                                Some(colors[b] as u64)
                            } else if b == v {
                                Some(colors[a] as u64)
                            } else {
                                None
                            }
                        })
                        .collect();
                    neighbors.sort_unstable();
                    sig.extend(neighbors);
                    sig
                })
                .collect();
            let next = rank_signatures(&sigs);
            let next_distinct = next.iter().copied().max().unwrap_or(0) + 1;
            if next_distinct == distinct {
                return next;
            }
            colors = next;
            distinct = next_distinct;
        }
    }

    fn relabel(&self, order: &[usize]) -> StableGraph {
        // order[new] = old
        let mut position = vec![0usize; order.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let genera = order.iter().map(|&old| self.genera[old]).collect();
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (position[u], position[v]);
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        edges.sort_unstable();
        let legs = self.legs.iter().map(|(&l, &v)| (l, position[v])).collect();
        StableGraph { genera, edges, legs }
    }

    /// Minimal relabeled form together with the number of vertex orderings
    /// attaining it (= the order of the vertex-level automorphism group).
    fn canonicalize(&self) -> (StableGraph, u64) {
        let colors = self.refined_colors();
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            classes.entry(c).or_default().push(v);
        }
        let mut best: Option<StableGraph> = None;
        let mut ties = 0u64;
        for combo in classes
            .values()
            .map(|class| class.iter().copied().permutations(class.len()))
            .multi_cartesian_product()
        {
            let order: Vec<usize> = combo.into_iter().flatten().collect();
            let candidate = self.relabel(&order);
            match &best {
                None => {
                    best = Some(candidate);
                    ties = 1;
                }
                Some(current) => {
                    if candidate < *current {
                        best = Some(candidate);
                        ties = 1;
                    } else if candidate == *current {
                        ties += 1;
                    }
                }
            }
        }
        (best.expect("at least one vertex ordering"), ties)
    }

    /// Canonical representative of the isomorphism class (vertex relabeling
    /// only; legs keep their labels).
    pub fn canonical_form(&self) -> StableGraph {
        self.canonicalize().0
    }

    /// Key equal for two graphs iff they are isomorphic respecting legs.
    pub fn canonical_key(&self) -> Vec<u8> {
        self.canonical_form().to_record().into_bytes()
    }

    /// Order of the label-preserving automorphism group on half-edges:
    /// vertex symmetries times parallel-edge permutations times loop
    /// half-edge swaps.
    pub fn automorphism_count(&self) -> u64 {
        let (_, vertex_auts) = self.canonicalize();
        let mut multiplicity: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for &e in &self.edges {
            *multiplicity.entry(e).or_insert(0) += 1;
        }
        let mut factor = 1u64;
        for (&(u, v), &m) in &multiplicity {
            factor *= factorial(m);
            if u == v {
                factor *= 1u64 << m;
            }
        }
        vertex_auts * factor
    }
}

impl fmt::Display for StableGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_record())
    }
}

impl FromStr for StableGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let err = |msg: &str| GraphError::Parse(format!("{msg} in `{s}`"));
        let mut sections = s.split(';');
        let vertices = sections
            .next()
            .and_then(|p| p.strip_prefix("vertices=["))
            .and_then(|p| p.strip_suffix(']'))
            .ok_or_else(|| err("missing vertices section"))?;
        let edges = sections
            .next()
            .and_then(|p| p.strip_prefix("edges=["))
            .and_then(|p| p.strip_suffix(']'))
            .ok_or_else(|| err("missing edges section"))?;
        let legs = sections
            .next()
            .and_then(|p| p.strip_prefix("legs=["))
            .and_then(|p| p.strip_suffix(']'))
            .ok_or_else(|| err("missing legs section"))?;
        if sections.next().is_some() {
            return Err(err("trailing content"));
        }
        let genera: Vec<u32> = if vertices.is_empty() {
            vec![]
        } else {
            vertices
                .split(',')
                .map(|t| t.parse().map_err(|_| err("bad genus")))
                .collect::<Result<_, _>>()?
        };
        let mut edge_list = Vec::new();
        if !edges.is_empty() {
            let inner = edges
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| err("bad edge list"))?;
            for pair in inner.split("),(") {
                let (u, v) = pair.split_once(',').ok_or_else(|| err("bad edge pair"))?;
                edge_list.push((
                    u.parse().map_err(|_| err("bad edge endpoint"))?,
                    v.parse().map_err(|_| err("bad edge endpoint"))?,
                ));
            }
        }
        let mut leg_map = BTreeMap::new();
        if !legs.is_empty() {
            for item in legs.split(',') {
                let (l, v) = item.split_once(':').ok_or_else(|| err("bad leg entry"))?;
                leg_map.insert(
                    l.parse().map_err(|_| err("bad leg label"))?,
                    v.parse().map_err(|_| err("bad leg vertex"))?,
                );
            }
        }
        StableGraph::new(genera, edge_list, leg_map)
    }
}

fn rank_signatures(sigs: &[Vec<u64>]) -> Vec<usize> {
    let mut sorted: Vec<&Vec<u64>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(&s).expect("signature present"))
        .collect()
}

fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

/// All one-edge degenerations of a stable graph: reduce a vertex genus and
/// add a loop, or split a vertex in two along a distribution of its genus,
/// legs and incident half-edges. Unstable results are dropped.
fn one_edge_degenerations(graph: &StableGraph) -> Vec<StableGraph> {
    let mut out = Vec::new();
    let k = graph.num_vertices();
    for v in 0..k {
        if graph.genera[v] >= 1 {
            let mut genera = graph.genera.clone();
            genera[v] -= 1;
            let mut edges = graph.edges.clone();
            edges.push((v, v));
            out.push(
                StableGraph::new(genera, edges, graph.legs.clone()).expect("valid genus reduction"),
            );
        }

        let h = graph.genera[v];
        let legs_at: Vec<u32> = graph
            .legs
            .iter()
            .filter(|&(_, &w)| w == v)
            .map(|(&l, _)| l)
            .collect();
        let mut plain_ends: Vec<usize> = Vec::new(); // edge indices with one end at v
        let mut loops: Vec<usize> = Vec::new();
        for (i, &(a, b)) in graph.edges.iter().enumerate() {
            if a == v && b == v {
                loops.push(i);
            } else if a == v || b == v {
                plain_ends.push(i);
            }
        }
        let w = k; // index of the new vertex
        for h1 in 0..=h {
            for leg_mask in 0..(1u32 << legs_at.len()) {
                for end_mask in 0..(1u32 << plain_ends.len()) {
                    let mut loop_assign = vec![0u8; loops.len()];
                    loop {
                        let mut genera = graph.genera.clone();
                        genera[v] = h1;
                        genera.push(h - h1);
                        let mut edges = graph.edges.clone();
                        for (j, &edge_idx) in plain_ends.iter().enumerate() {
                            if end_mask >> j & 1 == 1 {
                                let (a, b) = edges[edge_idx];
                                edges[edge_idx] = if a == v { (w, b) } else { (a, w) };
                            }
                        }
                        for (j, &edge_idx) in loops.iter().enumerate() {
                            match loop_assign[j] {
                                0 => {}
                                1 => edges[edge_idx] = (w, w),
                                _ => edges[edge_idx] = (v, w),
                            }
                        }
                        edges.push((v, w));
                        let mut legs = graph.legs.clone();
                        for (j, &label) in legs_at.iter().enumerate() {
                            if leg_mask >> j & 1 == 1 {
                                legs.insert(label, w);
                            }
                        }
                        let candidate =
                            StableGraph::new(genera, edges, legs).expect("valid split");
                        let stable_pair = |x: usize| {
                            2 * i64::from(candidate.genera[x]) - 2 + candidate.valence(x) as i64 > 0
                        };
                        if stable_pair(v) && stable_pair(w) {
                            out.push(candidate);
                        }

                        // next base-3 assignment
                        let mut carry = true;
                        for digit in loop_assign.iter_mut() {
                            if !carry {
                                break;
                            }
                            *digit += 1;
                            if *digit == 3 {
                                *digit = 0;
                            } else {
                                carry = false;
                            }
                        }
                        if carry {
                            break;
                        }
                    }
                }
            }
        }
    }
    out
}

/// All isomorphism classes of stable dual graphs of total genus `g` with `n`
/// labeled legs, sorted by canonical key. Computed as the closure of the
/// smooth (one-vertex, no-edge) graph under one-edge degenerations.
pub fn enumerate_strata(g: u32, n: u32) -> Result<Vec<StableGraph>, GraphError> {
    if 2 * i64::from(g) - 2 + i64::from(n) <= 0 {
        return Err(GraphError::UnstablePair(g, n));
    }
    if g > STRATA_GENUS_MAX || n > STRATA_MARKINGS_MAX {
        return Err(GraphError::OutOfWindow(g, n, STRATA_GENUS_MAX, STRATA_MARKINGS_MAX));
    }
    let smooth = StableGraph::new(vec![g], vec![], (1..=n).map(|l| (l, 0)).collect())?;
    let mut seen: BTreeMap<Vec<u8>, StableGraph> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let canon = smooth.canonical_form();
    seen.insert(canon.to_record().into_bytes(), canon.clone());
    queue.push_back(canon);
    while let Some(current) = queue.pop_front() {
        for successor in one_edge_degenerations(&current) {
            let canon = successor.canonical_form();
            if let std::collections::btree_map::Entry::Vacant(slot) =
                seen.entry(canon.to_record().into_bytes())
            {
                slot.insert(canon.clone());
                queue.push_back(canon);
            }
        }
    }
    Ok(seen.into_values().collect())
}

/// The one-edge stable graphs for (g, n): the irreducible (loop) type when
/// g >= 1, plus every unordered stable splitting (g1, S1) | (g2, S2).
/// Sorted by canonical key.
pub fn enumerate_one_node(g: u32, n: u32) -> Result<Vec<StableGraph>, GraphError> {
    if 2 * i64::from(g) - 2 + i64::from(n) <= 0 {
        return Err(GraphError::UnstablePair(g, n));
    }
    let mut out: Vec<StableGraph> = Vec::new();
    if g >= 1 {
        let graph = StableGraph::new(
            vec![g - 1],
            vec![(0, 0)],
            (1..=n).map(|l| (l, 0)).collect(),
        )?;
        out.push(graph.canonical_form());
    }
    for split in stable_splits(g, n) {
        let (g1, ref s1) = split;
        let legs = (1..=n)
            .map(|l| (l, usize::from(!s1.contains(&l))))
            .collect();
        let graph = StableGraph::new(vec![g1, g - g1], vec![(0, 1)], legs)?;
        out.push(graph.canonical_form());
    }
    out.sort_by_key(|g| g.to_record());
    Ok(out)
}

/// Unordered stable splittings of (g, {1..n}) into (g1, S1) | (g2, S2),
/// each side stable once the connecting node is counted:
/// 2 g_i - 2 + |S_i| + 1 > 0. Each unordered pair is reported once, as the
/// lexicographically smaller (g1, S1) side.
pub fn stable_splits(g: u32, n: u32) -> Vec<(u32, Vec<u32>)> {
    let mut out = Vec::new();
    for g1 in 0..=g {
        let g2 = g - g1;
        for mask in 0..(1u64 << n) {
            let s1: Vec<u32> = (1..=n).filter(|&l| mask >> (l - 1) & 1 == 1).collect();
            let s2: Vec<u32> = (1..=n).filter(|&l| mask >> (l - 1) & 1 == 0).collect();
            let side_stable = |gi: u32, si: &[u32]| 2 * i64::from(gi) - 2 + si.len() as i64 + 1 > 0;
            if !side_stable(g1, &s1) || !side_stable(g2, &s2) {
                continue;
            }
            if (g1, &s1) > (g2, &s2) {
                continue; // unordered: keep the smaller presentation
            }
            if (g1, &s1) == (g2, &s2) && !s1.is_empty() {
                continue; // cannot happen (sides are disjoint), defensive skip
            }
            out.push((g1, s1));
        }
    }
    out.sort();
    out.dedup();
    out
}
