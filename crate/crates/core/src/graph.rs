//! Immutable simple undirected graphs over positional vertex indices.
//!
//! Adjacency rows are bit sets, so neighbourhood unions and intersections
//! (which dominate every verifier kernel) are word-parallel.

use crate::bits::Bits;
use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<Bits>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(order={}, edges={:?})", self.order(), self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Self {
        Graph {
            rows: (0..order).map(|_| Bits::new(order)).collect(),
        }
    }

    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(order);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= order {
                    return Err(Error::InvalidVertex { vertex: x, order });
                }
            }
            if u == v {
                return Err(Error::SelfLoopCreated { a: u, b: v });
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds from adjacency rows, enforcing symmetry and irreflexivity.
    pub fn from_rows(rows: Vec<Bits>) -> Result<Self> {
        let order = rows.len();
        for (u, row) in rows.iter().enumerate() {
            if row.width() != order {
                return Err(Error::Parse(format!("row {u} has width {}", row.width())));
            }
            if row.contains(u) {
                return Err(Error::SelfLoopCreated { a: u, b: u });
            }
            for v in row.iter() {
                if !rows[v].contains(u) {
                    return Err(Error::Parse(format!("asymmetric adjacency {u}-{v}")));
                }
            }
        }
        Ok(Graph { rows })
    }

    pub(crate) fn add_edge(&mut self, u: Vertex, v: Vertex) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Bits::count).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &Bits {
        &self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.rows[v].count()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            let mut v = self.rows[u].next_from(u + 1);
            while let Some(w) = v {
                out.push((u, w));
                v = self.rows[u].next_from(w + 1);
            }
        }
        out
    }

    pub fn vertex_set(&self) -> Bits {
        Bits::full(self.order())
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let rows = (0..n)
            .map(|v| {
                let mut r = self.rows[v].complement();
                r.remove(v);
                r
            })
            .collect();
        Graph { rows }
    }

    /// Full scan of the representation invariants.
    pub fn check_invariants(&self) -> bool {
        let n = self.order();
        self.rows.iter().enumerate().all(|(u, row)| {
            row.width() == n && !row.contains(u) && row.iter().all(|v| self.rows[v].contains(u))
        })
    }

    pub fn is_clique(&self, vertices: &[Vertex]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..].iter().all(|&v| self.has_edge(u, v))
        })
    }

    pub fn is_independent(&self, vertices: &[Vertex]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v))
        })
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.order() {
            Err(Error::InvalidVertex {
                vertex: v,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }

    /// Subgraph induced by `keep`, relabelled in increasing index order.
    pub fn induced(&self, keep: &Bits) -> Graph {
        let map: Vec<Vertex> = keep.iter().collect();
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &v) in map.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            for w in self.rows[v].intersection(keep).iter() {
                if pos[w] > i {
                    g.add_edge(i, pos[w]);
                }
            }
        }
        g
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<Bits> {
        let n = self.order();
        let mut seen = Bits::new(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = Bits::new(n);
            comp.insert(start);
            let mut frontier = comp.clone();
            while !frontier.is_empty() {
                let mut next = Bits::new(n);
                for v in frontier.iter() {
                    next.union_with(&self.rows[v]);
                }
                next.difference_with(&comp);
                comp.union_with(&next);
                frontier = next;
            }
            seen.union_with(&comp);
            out.push(comp);
        }
        out
    }

    /// Quotient graph merging each identification class into one vertex.
    ///
    /// Classes come from the transitive closure of `pairs`; the merged vertex
    /// takes the position of the class's smallest member relative to the other
    /// classes, so the layout is deterministic.
    pub fn identify(&self, pairs: &[(Vertex, Vertex)]) -> Result<Graph> {
        let n = self.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in pairs {
            self.check_vertex(a)?;
            self.check_vertex(b)?;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi] = lo;
            }
        }
        let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
        // roots are class minima, so numbering roots in index order is stable
        let mut new_index = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if roots[v] == v {
                new_index[v] = next;
                next += 1;
            }
        }
        for u in 0..n {
            for v in self.rows[u].iter() {
                if u < v && roots[u] == roots[v] {
                    return Err(Error::SelfLoopCreated { a: u, b: v });
                }
            }
        }
        let mut g = Graph::empty(next);
        for (u, v) in self.edges() {
            g.add_edge(new_index[roots[u]], new_index[roots[v]]);
        }
        Ok(g)
    }

    /// Vertices adjacent to none of `s` and outside `s`: the common
    /// neighbours of `s` in the complement.
    pub fn complement_common_neighbors(&self, s: &[Vertex]) -> Result<Bits> {
        let mut covered = Bits::new(self.order());
        for &u in s {
            self.check_vertex(u)?;
            covered.insert(u);
            covered.union_with(&self.rows[u]);
        }
        Ok(covered.complement())
    }

    /// Union of the open neighbourhoods of `s`.
    pub fn neighborhood_union(&self, s: &[Vertex]) -> Bits {
        let mut acc = Bits::new(self.order());
        for &u in s {
            acc.union_with(&self.rows[u]);
        }
        acc
    }

    /// Every independent set of exactly `size` vertices in lexicographic order.
    pub fn independent_sets(&self, size: usize) -> IndependentSets<'_> {
        IndependentSets::new(self, size)
    }

    /// Block–cut decomposition via Tarjan's biconnected components.
    pub fn blocks(&self) -> BlockDecomposition {
        BlockDecomposition::of(self)
    }
}

/// Complete graph on `size` vertices.
pub fn clique(size: usize) -> Graph {
    let mut g = Graph::empty(size);
    for u in 0..size {
        for v in u + 1..size {
            g.add_edge(u, v);
        }
    }
    g
}

/// Disjoint union; part `i` is offset by the total order of the parts before it.
pub fn disjoint_union<'a, I>(parts: I) -> Graph
where
    I: IntoIterator<Item = &'a Graph>,
{
    let parts: Vec<&Graph> = parts.into_iter().collect();
    let total = parts.iter().map(|g| g.order()).sum();
    let mut out = Graph::empty(total);
    let mut offset = 0;
    for g in parts {
        for (u, v) in g.edges() {
            out.add_edge(u + offset, v + offset);
        }
        offset += g.order();
    }
    out
}

/// Lexicographic backtracking over independent sets of a fixed size.
///
/// The candidate set at each depth is the set of later vertices that avoid
/// the closed neighbourhoods of everything chosen so far, so dead prefixes
/// are never extended.
pub struct IndependentSets<'g> {
    graph: &'g Graph,
    size: usize,
    chosen: Vec<Vertex>,
    // candidates[d] = vertices still allowed at depth d
    candidates: Vec<Bits>,
    cursor: Vec<usize>,
    done: bool,
    emitted_empty: bool,
}

impl<'g> IndependentSets<'g> {
    fn new(graph: &'g Graph, size: usize) -> Self {
        let n = graph.order();
        IndependentSets {
            graph,
            size,
            chosen: Vec::with_capacity(size),
            candidates: vec![Bits::full(n)],
            cursor: vec![0],
            done: size > n,
            emitted_empty: false,
        }
    }
}

impl Iterator for IndependentSets<'_> {
    type Item = Vec<Vertex>;

    fn next(&mut self) -> Option<Vec<Vertex>> {
        if self.done {
            return None;
        }
        if self.size == 0 {
            if self.emitted_empty {
                return None;
            }
            self.emitted_empty = true;
            self.done = true;
            return Some(Vec::new());
        }
        loop {
            let depth = self.chosen.len();
            let cand = &self.candidates[depth];
            let need = self.size - depth;
            match cand.next_from(self.cursor[depth]) {
                Some(v) if cand.count() >= need => {
                    self.cursor[depth] = v + 1;
                    if depth + 1 == self.size {
                        let mut out = self.chosen.clone();
                        out.push(v);
                        return Some(out);
                    }
                    let mut next = cand.difference(self.graph.neighbors(v));
                    // only later vertices keep the order lexicographic
                    next.difference_with(&Bits::range(next.width(), 0, v + 1));
                    self.chosen.push(v);
                    if self.candidates.len() <= depth + 1 {
                        self.candidates.push(next);
                        self.cursor.push(0);
                    } else {
                        self.candidates[depth + 1] = next;
                        self.cursor[depth + 1] = 0;
                    }
                }
                _ => {
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.chosen.pop();
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BlockDecomposition {
    /// Sorted vertex lists, ordered by smallest vertex then lexicographically.
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: Vec<Vertex>,
}

impl BlockDecomposition {
    fn of(g: &Graph) -> Self {
        let n = g.order();
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0usize; n];
        let mut time = 0usize;
        let mut blocks: Vec<Vec<Vertex>> = Vec::new();
        let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
        // frame: (vertex, parent, next neighbour cursor)
        let mut frames: Vec<(Vertex, Vertex, usize)> = Vec::new();

        for root in 0..n {
            if disc[root] != UNSEEN {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            if g.degree(root) == 0 {
                blocks.push(vec![root]);
                continue;
            }
            frames.push((root, UNSEEN, 0));
            while let Some(&mut (u, parent, ref mut cursor)) = frames.last_mut() {
                match g.neighbors(u).next_from(*cursor) {
                    Some(w) => {
                        *cursor = w + 1;
                        if disc[w] == UNSEEN {
                            edge_stack.push((u, w));
                            disc[w] = time;
                            low[w] = time;
                            time += 1;
                            frames.push((w, u, 0));
                        } else if w != parent && disc[w] < disc[u] {
                            edge_stack.push((u, w));
                            low[u] = low[u].min(disc[w]);
                        }
                    }
                    None => {
                        frames.pop();
                        if parent != UNSEEN {
                            low[parent] = low[parent].min(low[u]);
                            if low[u] >= disc[parent] {
                                let mut members = Bits::new(n);
                                while let Some((a, b)) = edge_stack.pop() {
                                    members.insert(a);
                                    members.insert(b);
                                    if (a, b) == (parent, u) {
                                        break;
                                    }
                                }
                                blocks.push(members.to_vec());
                            }
                        }
                    }
                }
            }
        }
        blocks.sort();
        let mut membership = vec![0usize; n];
        for b in &blocks {
            for &v in b {
                membership[v] += 1;
            }
        }
        let cut_vertices = (0..n).filter(|&v| membership[v] > 1).collect();
        BlockDecomposition {
            blocks,
            cut_vertices,
        }
    }

    pub fn largest_block(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }
}
