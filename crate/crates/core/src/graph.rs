//! Signed graphs, root vectors and the incidence matrix `M_G`.
//!
//! Vertices are numbered `1..=n+1`. An edge `(i, j, -)` with `i < j` carries the
//! root `e_i - e_j`, an edge `(i, j, +)` carries `e_i + e_j` and a loop `(i, i, +)`
//! carries `2 e_i`. A third kind, the short loop, carries `e_i`; it is used for the
//! type B family and for materialized right half-edges of dynamic flows.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
    /// Loop with root `e_i` (written `s` in the text format).
    Short,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
            Sign::Short => 's',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedEdge {
    pub lo: usize,
    pub hi: usize,
    pub sign: Sign,
}

impl SignedEdge {
    pub fn new(lo: usize, hi: usize, sign: Sign) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(Error::InvalidEdge(format!("({lo},{hi},{})", sign.symbol())));
        }
        match sign {
            Sign::Minus if lo == hi => Err(Error::InvalidEdge(format!(
                "({lo},{hi},-): the sign of a loop is always +"
            ))),
            Sign::Short if lo != hi => Err(Error::InvalidEdge(format!(
                "({lo},{hi},s): short roots only occur as loops"
            ))),
            _ => Ok(SignedEdge { lo, hi, sign }),
        }
    }

    /// Edge between `i` and `j` in either order; panics on a malformed edge.
    pub fn neg(i: usize, j: usize) -> Self {
        Self::new(i.min(j), i.max(j), Sign::Minus).expect("valid negative edge")
    }

    pub fn pos(i: usize, j: usize) -> Self {
        Self::new(i.min(j), i.max(j), Sign::Plus).expect("valid positive edge")
    }

    pub fn short_loop(i: usize) -> Self {
        Self::new(i, i, Sign::Short).expect("valid short loop")
    }

    pub fn is_loop(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Minus
    }

    /// Entry of the root vector at vertex `v`.
    pub fn coefficient(&self, v: usize) -> i64 {
        match self.sign {
            Sign::Minus => {
                if v == self.lo {
                    1
                } else if v == self.hi {
                    -1
                } else {
                    0
                }
            }
            Sign::Plus => {
                if self.lo == self.hi {
                    if v == self.lo {
                        2
                    } else {
                        0
                    }
                } else if v == self.lo || v == self.hi {
                    1
                } else {
                    0
                }
            }
            Sign::Short => i64::from(v == self.lo),
        }
    }

    /// Incidence sign at endpoint `v`: `true` for positive incidence.
    /// A negative edge is negatively incident to its larger endpoint only.
    pub fn positively_incident(&self, v: usize) -> bool {
        !(self.sign == Sign::Minus && v == self.hi)
    }

    pub fn other_end(&self, v: usize) -> usize {
        if v == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Display for SignedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.lo, self.hi, self.sign.symbol())
    }
}

/// A vertex count together with an ordered multiset of signed edges.
/// The position of an edge in `edges` is its canonical index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedGraph {
    n_plus_1: usize,
    edges: Vec<SignedEdge>,
}

impl SignedGraph {
    pub fn new(n_plus_1: usize, edges: Vec<SignedEdge>) -> Result<Self> {
        for e in &edges {
            if e.hi > n_plus_1 {
                return Err(Error::InvalidEdge(format!(
                    "{e} has an endpoint outside 1..={n_plus_1}"
                )));
            }
        }
        Ok(SignedGraph { n_plus_1, edges })
    }

    /// Build from `(i, j, sign)` triples, e.g. `(1, 2, '-')`.
    pub fn from_triples(n_plus_1: usize, triples: &[(usize, usize, char)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(triples.len());
        for &(i, j, s) in triples {
            let sign = match s {
                '-' => Sign::Minus,
                '+' => Sign::Plus,
                's' => Sign::Short,
                other => return Err(Error::InvalidEdge(format!("unknown sign {other:?}"))),
            };
            edges.push(SignedEdge::new(i, j, sign)?);
        }
        Self::new(n_plus_1, edges)
    }

    pub fn n_plus_1(&self) -> usize {
        self.n_plus_1
    }

    pub fn edges(&self) -> &[SignedEdge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> SignedEdge {
        self.edges[k]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn push(&mut self, e: SignedEdge) -> Result<()> {
        if e.hi > self.n_plus_1 {
            return Err(Error::InvalidEdge(format!("{e} is out of range")));
        }
        self.edges.push(e);
        Ok(())
    }

    pub fn with_edge(&self, e: SignedEdge) -> Result<Self> {
        let mut g = self.clone();
        g.push(e)?;
        Ok(g)
    }

    pub fn is_all_negative(&self) -> bool {
        self.edges.iter().all(|e| e.sign == Sign::Minus)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.is_loop())
    }

    pub fn positive_edges(&self) -> impl Iterator<Item = (usize, &SignedEdge)> {
        self.edges.iter().enumerate().filter(|(_, e)| e.sign != Sign::Minus)
    }

    /// Number of negative edges `(., i, -)`, i.e. `#I_i`.
    pub fn indegree(&self, i: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.sign == Sign::Minus && e.hi == i)
            .count()
    }

    /// Multiplicity of `(i, j, sign)`.
    pub fn multiplicity(&self, i: usize, j: usize, sign: Sign) -> usize {
        self.edges
            .iter()
            .filter(|e| e.lo == i && e.hi == j && e.sign == sign)
            .count()
    }

    /// Connectivity over all `n+1` vertices. The empty vertex set and a single
    /// vertex count as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n_plus_1;
        if n <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.lo), find(&mut parent, e.hi));
            parent[a] = b;
        }
        let root = find(&mut parent, 1);
        (2..=n).all(|v| find(&mut parent, v) == root)
    }

    /// The graph obtained by keeping only the edges whose index satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> SignedGraph {
        SignedGraph {
            n_plus_1: self.n_plus_1,
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(k, _)| keep(*k))
                .map(|(_, e)| *e)
                .collect(),
        }
    }

    /// Serialize to the line-based text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.n_plus_1);
        for e in &self.edges {
            s.push_str(&format!("edge {} {} {}\n", e.lo, e.hi, e.sign.symbol()));
        }
        s
    }

    /// Parse the text format: `vertices <n+1>` followed by `edge <i> <j> <+|-|s>` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n_plus_1: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "vertices" => {
                    if n_plus_1.is_some() {
                        return Err(perr("duplicate `vertices` line".into()));
                    }
                    if toks.len() != 2 {
                        return Err(perr("expected `vertices <count>`".into()));
                    }
                    let n: usize = toks[1]
                        .parse()
                        .map_err(|_| perr(format!("bad vertex count {:?}", toks[1])))?;
                    n_plus_1 = Some(n);
                }
                "edge" => {
                    let n = n_plus_1.ok_or_else(|| perr("`edge` before `vertices`".into()))?;
                    if toks.len() != 4 {
                        return Err(perr("expected `edge <i> <j> <+|->`".into()));
                    }
                    let i: usize = toks[1]
                        .parse()
                        .map_err(|_| perr(format!("bad vertex {:?}", toks[1])))?;
                    let j: usize = toks[2]
                        .parse()
                        .map_err(|_| perr(format!("bad vertex {:?}", toks[2])))?;
                    let sign = match toks[3] {
                        "-" => Sign::Minus,
                        "+" => Sign::Plus,
                        "s" => Sign::Short,
                        t => return Err(perr(format!("bad sign {t:?}"))),
                    };
                    if i > j {
                        return Err(perr(format!("edge {i} {j}: need i <= j")));
                    }
                    if i == 0 || j > n {
                        return Err(perr(format!("edge {i} {j}: vertex outside 1..={n}")));
                    }
                    if i == j && sign == Sign::Minus {
                        return Err(perr(format!(
                            "edge {i} {j} -: the sign of a loop is always +"
                        )));
                    }
                    let e = SignedEdge::new(i, j, sign).map_err(|e| perr(e.to_string()))?;
                    edges.push(e);
                }
                other => return Err(perr(format!("unknown directive {other:?}"))),
            }
        }
        let n = n_plus_1.ok_or(Error::Parse {
            line: 0,
            msg: "missing `vertices` line".into(),
        })?;
        SignedGraph::new(n, edges)
    }
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G[{}]{{", self.n_plus_1)?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Parse a comma separated integer list such as `1,3,-2`.
pub fn parse_netflow(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Precondition(format!("bad netflow entry {t:?}")))
        })
        .collect()
}

pub fn check_netflow(g: &SignedGraph, a: &[i64]) -> Result<()> {
    if a.len() != g.n_plus_1() {
        return Err(Error::LengthMismatch {
            expected: g.n_plus_1(),
            got: a.len(),
        });
    }
    Ok(())
}

/// `e_1 - e_{n+1}`.
pub fn netflow_type_a(n_plus_1: usize) -> Vec<i64> {
    let mut a = vec![0; n_plus_1];
    if n_plus_1 > 0 {
        a[0] += 1;
        a[n_plus_1 - 1] -= 1;
    }
    a
}

/// `(2, 0, ..., 0)`.
pub fn netflow_2e1(n_plus_1: usize) -> Vec<i64> {
    let mut a = vec![0; n_plus_1];
    if n_plus_1 > 0 {
        a[0] = 2;
    }
    a
}

pub fn root_vector(edge: &SignedEdge, n_plus_1: usize) -> Result<Vec<i64>> {
    if edge.lo == 0 || edge.hi > n_plus_1 || edge.lo > edge.hi {
        return Err(Error::InvalidEdge(format!(
            "{edge} is out of range for {n_plus_1} vertices"
        )));
    }
    Ok((1..=n_plus_1).map(|v| edge.coefficient(v)).collect())
}

/// `(n+1) x N` matrix whose columns are the root vectors in canonical edge order.
pub fn incidence_matrix(g: &SignedGraph) -> Vec<Vec<i64>> {
    (1..=g.n_plus_1())
        .map(|v| g.edges().iter().map(|e| e.coefficient(v)).collect())
        .collect()
}

/// Result of [`dimension`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dimension {
    Empty,
    Dim(usize),
}

/// Dimension of `F_G(a)`: `N - rank(M_G)` when `a` is interior to the cone of roots.
pub fn dimension(g: &SignedGraph, a: &[i64]) -> Result<Dimension> {
    check_netflow(g, a)?;
    let m = incidence_matrix(g);
    match lp::cone_position(&m, a) {
        lp::ConePosition::Outside => Ok(Dimension::Empty),
        lp::ConePosition::Boundary => Err(Error::BoundaryNetflow),
        lp::ConePosition::Interior => Ok(Dimension::Dim(g.num_edges() - linalg::rank_i64(&m))),
    }
}

/// Indices of edges that are positive at some point of `F_G(a)`. `None` if the
/// polytope is empty.
pub fn free_edges(g: &SignedGraph, a: &[i64]) -> Result<Option<Vec<usize>>> {
    check_netflow(g, a)?;
    let m = incidence_matrix(g);
    if !lp::in_cone(&m, a) {
        return Ok(None);
    }
    Ok(Some(
        (0..g.num_edges())
            .filter(|&k| lp::edge_can_be_positive(&m, a, k))
            .collect(),
    ))
}

/// Dimension of `F_G(a)` even when `a` is on the boundary of the cone: the
/// forced-zero edges are dropped first. Returns the dimension and the kept edges.
pub fn effective_dimension(g: &SignedGraph, a: &[i64]) -> Result<Option<(usize, Vec<usize>)>> {
    let Some(free) = free_edges(g, a)? else {
        return Ok(None);
    };
    let sub = g.restrict(|k| free.binary_search(&k).is_ok());
    let m = incidence_matrix(&sub);
    Ok(Some((sub.num_edges() - linalg::rank_i64(&m), free)))
}

/// Incoming and outgoing edges at a vertex, as used by vertex elimination.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InOut {
    /// Negative edges `(j, i, -)` with `j < i`.
    pub incoming: Vec<usize>,
    /// Edges `(i, j, +/-)` with `j > i` and `(j, i, +)` with `j < i`.
    pub outgoing: Vec<usize>,
    /// The positive members of `outgoing`.
    pub outgoing_plus: Vec<usize>,
    /// Loops at `i`; they belong to neither list.
    pub loops: Vec<usize>,
}

pub fn in_out_edges(g: &SignedGraph, i: usize) -> Result<InOut> {
    if i == 0 || i > g.n_plus_1() {
        return Err(Error::Precondition(format!("vertex {i} out of range")));
    }
    let mut io = InOut::default();
    for (k, e) in g.edges().iter().enumerate() {
        if e.lo != i && e.hi != i {
            continue;
        }
        if e.is_loop() {
            io.loops.push(k);
        } else if e.sign == Sign::Minus && e.hi == i {
            io.incoming.push(k);
        } else {
            io.outgoing.push(k);
            if e.sign == Sign::Plus {
                io.outgoing_plus.push(k);
            }
        }
    }
    Ok(io)
}

/// Check `M_G b = a` exactly for a rational flow.
pub fn is_flow_rational(g: &SignedGraph, a: &[i64], b: &[BigRational]) -> bool {
    use num_traits::{Signed, Zero};
    if b.len() != g.num_edges() || a.len() != g.n_plus_1() {
        return false;
    }
    if b.iter().any(|x| x.is_negative()) {
        return false;
    }
    let mut sums = vec![BigRational::zero(); g.n_plus_1()];
    for (e, x) in g.edges().iter().zip(b) {
        sums[e.lo - 1] += x * BigRational::from_integer(e.coefficient(e.lo).into());
        if !e.is_loop() {
            sums[e.hi - 1] += x * BigRational::from_integer(e.coefficient(e.hi).into());
        }
    }
    sums.iter()
        .zip(a)
        .all(|(s, &ai)| *s == BigRational::from_integer(ai.into()))
}

/// Check `M_G b = a` for an integer flow.
pub fn is_flow(g: &SignedGraph, a: &[i64], b: &[u64]) -> bool {
    if b.len() != g.num_edges() || a.len() != g.n_plus_1() {
        return false;
    }
    let mut sums = vec![0i128; g.n_plus_1()];
    for (e, &x) in g.edges().iter().zip(b) {
        sums[e.lo - 1] += e.coefficient(e.lo) as i128 * x as i128;
        if !e.is_loop() {
            sums[e.hi - 1] += e.coefficient(e.hi) as i128 * x as i128;
        }
    }
    sums.iter().zip(a).all(|(&s, &ai)| s == ai as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1a() -> SignedGraph {
        SignedGraph::from_triples(
            3,
            &[(1, 2, '-'), (1, 3, '-'), (1, 2, '+'), (2, 2, '+'), (2, 3, '-')],
        )
        .unwrap()
    }

    #[test]
    fn roots() {
        assert_eq!(root_vector(&SignedEdge::neg(1, 3), 3).unwrap(), vec![1, 0, -1]);
        assert_eq!(root_vector(&SignedEdge::pos(1, 2), 3).unwrap(), vec![1, 1, 0]);
        assert_eq!(root_vector(&SignedEdge::pos(2, 2), 3).unwrap(), vec![0, 2, 0]);
        assert_eq!(root_vector(&SignedEdge::short_loop(2), 3).unwrap(), vec![0, 1, 0]);
        assert!(root_vector(&SignedEdge::neg(1, 4), 3).is_err());
    }

    #[test]
    fn fig1a_matrix() {
        let m = incidence_matrix(&fig1a());
        let cols: Vec<Vec<i64>> = (0..5).map(|k| m.iter().map(|r| r[k]).collect()).collect();
        assert_eq!(
            cols,
            vec![
                vec![1, -1, 0],
                vec![1, 0, -1],
                vec![1, 1, 0],
                vec![0, 2, 0],
                vec![0, 1, -1]
            ]
        );
        let empty = SignedGraph::new(3, vec![]).unwrap();
        assert_eq!(incidence_matrix(&empty), vec![Vec::<i64>::new(); 3]);
    }

    #[test]
    fn negative_loop_rejected() {
        assert!(SignedEdge::new(2, 2, Sign::Minus).is_err());
        assert!(SignedEdge::new(2, 1, Sign::Plus).is_err());
    }

    #[test]
    fn dimensions() {
        let k4 = SignedGraph::from_triples(
            4,
            &[(1, 2, '-'), (1, 3, '-'), (1, 4, '-'), (2, 3, '-'), (2, 4, '-'), (3, 4, '-')],
        )
        .unwrap();
        assert_eq!(dimension(&k4, &[1, 0, 0, -1]).unwrap(), Dimension::Dim(3));
        let g = SignedGraph::from_triples(2, &[(1, 2, '-'), (1, 2, '+')]).unwrap();
        assert_eq!(dimension(&g, &[1, 0]).unwrap(), Dimension::Dim(0));
        assert_eq!(dimension(&g, &[-1, 0]).unwrap(), Dimension::Empty);
        // (0,1) solves b = (0, 1): on the boundary
        assert_eq!(dimension(&g, &[1, 1]), Err(Error::BoundaryNetflow));
        assert_eq!(effective_dimension(&g, &[1, 1]).unwrap(), Some((0, vec![1])));
    }

    #[test]
    fn in_out() {
        let g = fig1a();
        let io = in_out_edges(&g, 2).unwrap();
        assert_eq!(io.incoming, vec![0]);
        assert_eq!(io.outgoing, vec![2, 4]);
        assert_eq!(io.outgoing_plus, vec![2]);
        assert_eq!(io.loops, vec![3]);
        let iso = SignedGraph::new(3, vec![]).unwrap();
        assert_eq!(in_out_edges(&iso, 2).unwrap(), InOut::default());
    }

    #[test]
    fn text_round_trip() {
        let g = fig1a();
        assert_eq!(SignedGraph::parse(&g.to_text()).unwrap(), g);
        let two = SignedGraph::parse("vertices 2\nedge 1 2 -\nedge 1 2 +").unwrap();
        assert_eq!(two.num_edges(), 2);
        let one = SignedGraph::parse("# a loop\nvertices 1\nedge 1 1 +\n").unwrap();
        assert_eq!(one.edges(), &[SignedEdge::pos(1, 1)]);
        assert!(matches!(
            SignedGraph::parse("vertices 2\nedge 2 1 -"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(SignedGraph::parse("edge 2 1 -").is_err());
        assert!(matches!(
            SignedGraph::parse("vertices 2\nedge 2 2 -"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
