//! Total unimodularity of boundary matrices: the signed bipartite incidence
//! graph, induced b-odd circuits, MNTU certificates and their columnwise
//! minimal subset.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::complex::{BoundaryMatrix, ComplexError, SimplicialComplex};

pub mod oracle;

/// Default node budget for the circuit search.
pub const DEFAULT_SEARCH_BUDGET: usize = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TuError {
    #[error("entry ({row}, {col}) = {value} is not in {{0, 1, -1}}")]
    EntryOutOfRange { row: usize, col: usize, value: i64 },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("circuit search exhausted its budget of {0} nodes")]
    BudgetExhausted(usize),
    #[error("malformed circuit: {0}")]
    MalformedCircuit(String),
    #[error("inconsistent certificate: {0}")]
    InconsistentCertificate(String),
    #[error("columnwise minimal MNTUS has exterior row {row} with {count} nonzeros in its columns")]
    EvenExteriorRow { row: usize, count: usize },
    #[error("oracle limited to {cap}x{cap} submatrices, matrix is {rows}x{cols}")]
    OracleCap { rows: usize, cols: usize, cap: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Row(usize),
    Col(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteIncidenceGraph {
    rows: usize,
    cols: usize,
    row_adj: Vec<Vec<(usize, i8)>>,
    col_adj: Vec<Vec<(usize, i8)>>,
}

impl BipartiteIncidenceGraph {
    pub fn from_dense(a: &[Vec<i64>], cols: usize) -> Result<Self, TuError> {
        let mut row_adj = vec![Vec::new(); a.len()];
        let mut col_adj = vec![Vec::new(); cols];
        for (i, row) in a.iter().enumerate() {
            if row.len() != cols {
                return Err(TuError::Ragged { row: i, expected: cols, found: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 | -1 => {
                        row_adj[i].push((j, v as i8));
                        col_adj[j].push((i, v as i8));
                    }
                    _ => return Err(TuError::EntryOutOfRange { row: i, col: j, value: v }),
                }
            }
        }
        Ok(BipartiteIncidenceGraph { rows: a.len(), cols, row_adj, col_adj })
    }

    pub fn from_boundary(b: &BoundaryMatrix) -> Self {
        let row_adj = (0..b.m()).map(|i| b.row(i).to_vec()).collect();
        let col_adj = (0..b.n()).map(|j| b.column(j).to_vec()).collect();
        BipartiteIncidenceGraph { rows: b.m(), cols: b.n(), row_adj, col_adj }
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn edge_count(&self) -> usize {
        self.row_adj.iter().map(Vec::len).sum()
    }

    pub fn row_neighbors(&self, i: usize) -> &[(usize, i8)] {
        &self.row_adj[i]
    }

    pub fn col_neighbors(&self, j: usize) -> &[(usize, i8)] {
        &self.col_adj[j]
    }

    pub fn weight(&self, row: usize, col: usize) -> i8 {
        self.row_adj[row].iter().find(|e| e.0 == col).map_or(0, |e| e.1)
    }

    pub fn edges(&self) -> Vec<(usize, usize, i8)> {
        let mut out = Vec::new();
        for (i, adj) in self.row_adj.iter().enumerate() {
            for &(j, w) in adj {
                out.push((i, j, w));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.cols]; self.rows];
        for (i, j, w) in self.edges() {
            a[i][j] = w as i64;
        }
        a
    }

    fn adjacent(&self, a: Node, b: Node) -> bool {
        match (a, b) {
            (Node::Row(i), Node::Col(j)) | (Node::Col(j), Node::Row(i)) => self.weight(i, j) != 0,
            _ => false,
        }
    }

    fn neighbors(&self, v: Node) -> Vec<(Node, i8)> {
        match v {
            Node::Row(i) => self.row_adj[i].iter().map(|&(j, w)| (Node::Col(j), w)).collect(),
            Node::Col(j) => self.col_adj[j].iter().map(|&(i, w)| (Node::Row(i), w)).collect(),
        }
    }
}

pub fn bipartite_graph(b: &BoundaryMatrix) -> BipartiteIncidenceGraph {
    BipartiteIncidenceGraph::from_boundary(b)
}

/// Sum of the edge weights of a closed alternating node sequence.
pub fn circuit_weight(g: &BipartiteIncidenceGraph, circuit: &[Node]) -> i64 {
    (0..circuit.len())
        .map(|t| {
            let (a, b) = (circuit[t], circuit[(t + 1) % circuit.len()]);
            match (a, b) {
                (Node::Row(i), Node::Col(j)) | (Node::Col(j), Node::Row(i)) => g.weight(i, j) as i64,
                _ => 0,
            }
        })
        .sum()
}

pub fn is_b_odd(weight: i64) -> bool {
    weight.rem_euclid(4) == 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MntuCertificate {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `matrix[a][b]` is the entry at (rows[a], cols[b]).
    pub matrix: Vec<Vec<i64>>,
    pub determinant: i64,
    /// Alternating column/row nodes, starting at the smallest column.
    pub circuit: Vec<Node>,
    pub interior_rows: Vec<usize>,
    pub exterior_rows: Vec<usize>,
    pub is_cmntus: bool,
}

impl MntuCertificate {
    fn from_circuit(g: &BipartiteIncidenceGraph, circuit: Vec<Node>) -> Self {
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        for v in &circuit {
            match *v {
                Node::Row(i) => rows.push(i),
                Node::Col(j) => cols.push(j),
            }
        }
        rows.sort_unstable();
        cols.sort_unstable();
        let matrix: Vec<Vec<i64>> =
            rows.iter().map(|&i| cols.iter().map(|&j| g.weight(i, j) as i64).collect()).collect();
        let determinant = oracle::determinant_i128(&matrix) as i64;
        let row_set: BTreeSet<usize> = rows.iter().copied().collect();
        let exterior: BTreeSet<usize> = cols
            .iter()
            .flat_map(|&j| g.col_neighbors(j).iter().map(|e| e.0))
            .filter(|i| !row_set.contains(i))
            .collect();
        MntuCertificate {
            interior_rows: rows.clone(),
            rows,
            cols,
            matrix,
            determinant,
            circuit,
            exterior_rows: exterior.into_iter().collect(),
            is_cmntus: false,
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry_sum(&self) -> i64 {
        self.matrix.iter().flatten().sum()
    }

    pub fn is_eulerian(&self) -> bool {
        let k = self.cols.len();
        self.matrix.iter().all(|r| r.iter().filter(|&&v| v != 0).count() % 2 == 0)
            && (0..k).all(|b| self.matrix.iter().filter(|r| r[b] != 0).count() % 2 == 0)
    }

    /// Nonzero count of `row` inside the columns Q_M.
    pub fn count_in_columns(&self, g: &BipartiteIncidenceGraph, row: usize) -> usize {
        self.cols.iter().filter(|&&j| g.weight(row, j) != 0).count()
    }

    /// True when two columns of M share two rows (impossible for a boundary matrix).
    pub fn columns_share_two_rows(&self) -> bool {
        let k = self.cols.len();
        (0..k).any(|a| {
            (a + 1..k).any(|b| self.matrix.iter().filter(|r| r[a] != 0 && r[b] != 0).count() >= 2)
        })
    }

    /// The circuit visits every node of M once, uses only nonzero entries,
    /// and M has no nonzero outside it.
    pub fn circuit_is_induced(&self, g: &BipartiteIncidenceGraph) -> bool {
        let c = &self.circuit;
        if c.len() != 2 * self.size() || c.len() < 4 {
            return false;
        }
        let nodes: BTreeSet<Node> = c.iter().copied().collect();
        if nodes.len() != c.len() {
            return false;
        }
        let closed = (0..c.len()).all(|t| g.adjacent(c[t], c[(t + 1) % c.len()]));
        let nnz = self.matrix.iter().flatten().filter(|&&v| v != 0).count();
        closed && nnz == c.len()
    }

    /// Checks determinant ±2, Eulerian rows and columns, entry sum 2 mod 4,
    /// and an induced b-odd circuit.
    pub fn verify(&self, g: &BipartiteIncidenceGraph) -> Result<(), TuError> {
        let fail = |s: &str| Err(TuError::InconsistentCertificate(s.into()));
        let rows_ok = self.rows.iter().all(|&i| i < g.num_rows());
        let cols_ok = self.cols.iter().all(|&j| j < g.num_cols());
        if !rows_ok || !cols_ok || self.rows.len() != self.cols.len() {
            return fail("row/column sets do not index a square submatrix");
        }
        for (a, &i) in self.rows.iter().enumerate() {
            for (b, &j) in self.cols.iter().enumerate() {
                if self.matrix[a][b] != g.weight(i, j) as i64 {
                    return fail("stored submatrix differs from the matrix");
                }
            }
        }
        if self.determinant.abs() != 2 || oracle::determinant_i128(&self.matrix).abs() != 2 {
            return fail("determinant is not ±2");
        }
        if !self.is_eulerian() {
            return fail("submatrix is not Eulerian");
        }
        if !is_b_odd(self.entry_sum()) {
            return fail("entry sum is not 2 mod 4");
        }
        if !self.circuit_is_induced(g) {
            return fail("circuit is not induced");
        }
        if !is_b_odd(circuit_weight(g, &self.circuit)) {
            return fail("circuit is not b-odd");
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct MntuSearch {
    /// Sorted by (rows, cols).
    pub certificates: Vec<MntuCertificate>,
    pub complete: bool,
    pub nodes_expanded: usize,
}

struct CircuitSearch<'a> {
    g: &'a BipartiteIncidenceGraph,
    seed: usize,
    path: Vec<Node>,
    on_path_row: Vec<bool>,
    on_path_col: Vec<bool>,
    touch_row: Vec<u32>,
    touch_col: Vec<u32>,
    weight: i64,
    found: Vec<Vec<Node>>,
    expanded: usize,
    budget: usize,
    exhausted: bool,
}

impl CircuitSearch<'_> {
    fn push(&mut self, v: Node) {
        self.path.push(v);
        match v {
            Node::Row(i) => {
                self.on_path_row[i] = true;
                for &(j, _) in self.g.row_neighbors(i) {
                    self.touch_col[j] += 1;
                }
            }
            Node::Col(j) => {
                self.on_path_col[j] = true;
                for &(i, _) in self.g.col_neighbors(j) {
                    self.touch_row[i] += 1;
                }
            }
        }
    }

    fn pop(&mut self) {
        match self.path.pop() {
            Some(Node::Row(i)) => {
                self.on_path_row[i] = false;
                for &(j, _) in self.g.row_neighbors(i) {
                    self.touch_col[j] -= 1;
                }
            }
            Some(Node::Col(j)) => {
                self.on_path_col[j] = false;
                for &(i, _) in self.g.col_neighbors(j) {
                    self.touch_row[i] -= 1;
                }
            }
            None => {}
        }
    }

    fn extend(&mut self) {
        if self.exhausted {
            return;
        }
        self.expanded += 1;
        if self.expanded > self.budget {
            self.exhausted = true;
            return;
        }
        let u = *self.path.last().expect("nonempty path");
        for (v, w) in self.g.neighbors(u) {
            match v {
                Node::Col(j) => {
                    if j <= self.seed || self.on_path_col[j] || self.touch_col[j] != 1 {
                        continue;
                    }
                }
                Node::Row(i) => {
                    if self.on_path_row[i] {
                        continue;
                    }
                    let closes = self.path.len() > 1 && self.g.weight(i, self.seed) != 0;
                    if closes {
                        let Node::Row(first) = self.path[1] else { unreachable!() };
                        if self.touch_row[i] == 2 && i > first {
                            let mut c = self.path.clone();
                            c.push(v);
                            let total = self.weight + w as i64 + self.g.weight(i, self.seed) as i64;
                            if is_b_odd(total) {
                                self.found.push(c);
                            }
                        }
                        continue;
                    }
                    if self.touch_row[i] != 1 {
                        continue;
                    }
                }
            }
            self.weight += w as i64;
            self.push(v);
            self.extend();
            self.pop();
            self.weight -= w as i64;
        }
    }
}

/// All induced b-odd circuits of the incidence graph; each is an MNTU
/// submatrix. `complete` is false when the node budget ran out.
pub fn find_mntus_in_graph(g: &BipartiteIncidenceGraph, budget: usize) -> MntuSearch {
    let mut circuits = Vec::new();
    let mut expanded = 0;
    let mut complete = true;
    for seed in 0..g.num_cols() {
        let mut s = CircuitSearch {
            g,
            seed,
            path: Vec::new(),
            on_path_row: vec![false; g.num_rows()],
            on_path_col: vec![false; g.num_cols()],
            touch_row: vec![0; g.num_rows()],
            touch_col: vec![0; g.num_cols()],
            weight: 0,
            found: Vec::new(),
            expanded: 0,
            budget: budget.saturating_sub(expanded),
            exhausted: false,
        };
        s.push(Node::Col(seed));
        s.extend();
        expanded += s.expanded.min(s.budget);
        circuits.append(&mut s.found);
        if s.exhausted {
            complete = false;
            break;
        }
    }
    let mut certificates: Vec<MntuCertificate> =
        circuits.into_iter().map(|c| MntuCertificate::from_circuit(g, c)).collect();
    certificates.sort_by(|a, b| (&a.rows, &a.cols).cmp(&(&b.rows, &b.cols)));
    certificates.dedup_by(|a, b| a.rows == b.rows && a.cols == b.cols);
    let flags: Vec<bool> = (0..certificates.len()).map(|t| columnwise_minimal(&certificates, t)).collect();
    for (c, f) in certificates.iter_mut().zip(flags) {
        c.is_cmntus = f;
    }
    MntuSearch { certificates, complete, nodes_expanded: expanded }
}

pub fn find_mntus(b: &BoundaryMatrix, budget: usize) -> MntuSearch {
    find_mntus_in_graph(&bipartite_graph(b), budget)
}

fn columnwise_minimal(all: &[MntuCertificate], t: usize) -> bool {
    let cols: BTreeSet<usize> = all[t].cols.iter().copied().collect();
    all.iter()
        .enumerate()
        .all(|(u, other)| u == t || !other.cols.iter().all(|j| cols.contains(j)))
}

/// Columnwise minimality against the full certificate list. A true verdict
/// also checks that every exterior row meets Q_M an odd number of times.
pub fn classify_cmntus(
    cert: &MntuCertificate,
    g: &BipartiteIncidenceGraph,
    all: &[MntuCertificate],
) -> Result<bool, TuError> {
    let Some(t) = all.iter().position(|c| c.rows == cert.rows && c.cols == cert.cols) else {
        return Err(TuError::InconsistentCertificate("certificate is not in the list".into()));
    };
    cert.verify(g)?;
    if !columnwise_minimal(all, t) {
        return Ok(false);
    }
    for &r in &cert.exterior_rows {
        let count = cert.count_in_columns(g, r);
        if count % 2 == 0 {
            return Err(TuError::EvenExteriorRow { row: r, count });
        }
    }
    Ok(true)
}

/// Full-budget circuit search; an exhausted search without a witness is an error.
pub fn is_totally_unimodular(b: &BoundaryMatrix, budget: usize) -> Result<bool, TuError> {
    let s = find_mntus(b, budget);
    if !s.certificates.is_empty() {
        return Ok(false);
    }
    if !s.complete {
        return Err(TuError::BudgetExhausted(budget));
    }
    Ok(true)
}

/// Torsion-freeness of every relative group H_p(L, L0) over pure subcomplexes,
/// decided as total unimodularity of ∂_{p+1}.
pub fn relative_torsion_free(k: &SimplicialComplex, p: usize, budget: usize) -> Result<bool, TuError> {
    let b = k.boundary_matrix(p + 1)?;
    is_totally_unimodular(&b, budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationReversingChain {
    /// q-simplex indices σ_0 … σ_{k−1}, cyclic.
    pub simplices: Vec<usize>,
    /// τ_i is the p-face shared by σ_i and σ_{i+1}.
    pub shared_faces: Vec<usize>,
    /// The 2k incidence entries, (σ_i, τ_i) then (σ_{i+1}, τ_i).
    pub entries: Vec<i64>,
}

impl OrientationReversingChain {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn entry_sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn reversed(&self, g: &BipartiteIncidenceGraph) -> Result<Self, TuError> {
        let k = self.simplices.len();
        let simplices: Vec<usize> = (0..k).map(|i| self.simplices[(k - i) % k]).collect();
        let shared_faces: Vec<usize> = (0..k).map(|i| self.shared_faces[(2 * k - i - 1) % k]).collect();
        Self::build(g, simplices, shared_faces)
    }

    fn build(g: &BipartiteIncidenceGraph, simplices: Vec<usize>, shared_faces: Vec<usize>) -> Result<Self, TuError> {
        let k = simplices.len();
        let mut entries = Vec::with_capacity(2 * k);
        for i in 0..k {
            entries.push(g.weight(shared_faces[i], simplices[i]) as i64);
            entries.push(g.weight(shared_faces[i], simplices[(i + 1) % k]) as i64);
        }
        let c = OrientationReversingChain { simplices, shared_faces, entries };
        c.validate(g)?;
        Ok(c)
    }

    /// Shared faces are faces of both neighbours, the entries sum to 2 mod 4,
    /// and a repeated simplex has four distinct neighbours.
    pub fn validate(&self, g: &BipartiteIncidenceGraph) -> Result<(), TuError> {
        let k = self.simplices.len();
        let bad = |s: String| Err(TuError::MalformedCircuit(s));
        if k < 2 || self.shared_faces.len() != k || self.entries.len() != 2 * k {
            return bad("chain needs at least two simplices and one face per step".into());
        }
        for i in 0..k {
            let (a, b, t) = (self.simplices[i], self.simplices[(i + 1) % k], self.shared_faces[i]);
            if g.weight(t, a) == 0 || g.weight(t, b) == 0 {
                return bad(format!("face {t} is not shared by simplices {a} and {b}"));
            }
        }
        if !is_b_odd(self.entry_sum()) {
            return bad(format!("entry sum {} is not 2 mod 4", self.entry_sum()));
        }
        for i in 0..k {
            for j in i + 1..k {
                if self.simplices[i] != self.simplices[j] {
                    continue;
                }
                let around: BTreeSet<usize> = [i + k - 1, i + 1, j + k - 1, j + 1]
                    .iter()
                    .map(|&t| self.simplices[t % k])
                    .collect();
                if around.len() != 4 {
                    return bad(format!("simplex {} repeats without four distinct neighbours", self.simplices[i]));
                }
            }
        }
        Ok(())
    }
}

pub fn extract_orientation_reversing_chain(
    cert: &MntuCertificate,
    g: &BipartiteIncidenceGraph,
) -> Result<OrientationReversingChain, TuError> {
    let c = &cert.circuit;
    if c.len() < 4 || c.len() % 2 != 0 {
        return Err(TuError::MalformedCircuit(format!("circuit of length {}", c.len())));
    }
    let mut simplices = Vec::new();
    let mut faces = Vec::new();
    for pair in c.chunks(2) {
        match (pair[0], pair[1]) {
            (Node::Col(j), Node::Row(i)) => {
                simplices.push(j);
                faces.push(i);
            }
            _ => return Err(TuError::MalformedCircuit("circuit does not alternate column, row".into())),
        }
    }
    OrientationReversingChain::build(g, simplices, faces)
}
