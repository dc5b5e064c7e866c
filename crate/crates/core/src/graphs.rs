//! Connected loopless multigraphs, divisor equivalence and chip-firing rank.
//!
//! Divisors are lattice points indexed by the vertices v_1..v_n; two divisors
//! are equivalent when they differ by an integer combination of Laplacian
//! rows. Every divisor has a unique q-reduced representative (q = v_n), found
//! with Dhar's burning algorithm, and the Baker-Norine rank is computed by
//! the winnability recursion on reduced representatives.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::exact;
use crate::lattice::{IntLatticeFunction, LatticePoint, ModularRule};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
	#[error("graph file line {line}: {detail}")]
	Parse { line: usize, detail: String },
	#[error("self-loop at vertex {vertex} is not allowed")]
	SelfLoop { vertex: usize },
	#[error("edge multiplicity table is not symmetric at ({u}, {v})")]
	Asymmetric { u: usize, v: usize },
	#[error("graph is disconnected: vertices {unreachable:?} are unreachable from vertex 1")]
	Disconnected { unreachable: Vec<usize> },
	#[error("graph needs at least one vertex")]
	Empty,
}

/// Undirected multigraph given by a symmetric multiplicity table with zero
/// diagonal. Connectivity is enforced at construction.
pub struct Multigraph {
	mult: Vec<Vec<i64>>,
	degrees: Vec<i64>,
	edge_count: i64,
	// BFS distance from q = v_n; layers[k] lists the vertices at distance k.
	dist: Vec<usize>,
	layers: Vec<Vec<usize>>,
	rank_memo: Mutex<HashMap<Vec<i64>, i64>>,
}

impl Multigraph {
	pub fn new(mult: Vec<Vec<i64>>) -> Result<Self, GraphError> {
		let n = mult.len();
		if n == 0 {
			return Err(GraphError::Empty);
		}
		for (u, row) in mult.iter().enumerate() {
			if row.len() != n {
				return Err(GraphError::Parse {
					line: 0,
					detail: format!("row {} has length {}, expected {n}", u + 1, row.len()),
				});
			}
			if row[u] != 0 {
				return Err(GraphError::SelfLoop { vertex: u + 1 });
			}
			for v in 0..n {
				if mult[u][v] < 0 || mult[u][v] != mult[v][u] {
					return Err(GraphError::Asymmetric { u: u + 1, v: v + 1 });
				}
			}
		}
		let degrees: Vec<i64> = (0..n).map(|u| exact::sum(mult[u].iter().copied())).collect();
		let edge_count = exact::sum(degrees.iter().copied()) / 2;

		// BFS from v_n; unreachable vertices make the graph unusable.
		let q = n - 1;
		let mut dist = vec![usize::MAX; n];
		dist[q] = 0;
		let mut queue = std::collections::VecDeque::from([q]);
		while let Some(u) = queue.pop_front() {
			for v in 0..n {
				if mult[u][v] > 0 && dist[v] == usize::MAX {
					dist[v] = dist[u] + 1;
					queue.push_back(v);
				}
			}
		}
		let unreachable: Vec<usize> = (0..n).filter(|&v| dist[v] == usize::MAX).map(|v| v + 1).collect();
		if !unreachable.is_empty() {
			return Err(GraphError::Disconnected { unreachable });
		}
		let max_dist = dist.iter().copied().max().unwrap();
		let mut layers = vec![Vec::new(); max_dist + 1];
		for v in 0..n {
			layers[dist[v]].push(v);
		}
		Ok(Multigraph {
			mult,
			degrees,
			edge_count,
			dist,
			layers,
			rank_memo: Mutex::new(HashMap::new()),
		})
	}

	/// Complete graph K_n (single edges, n >= 2).
	pub fn complete(n: usize) -> Self {
		assert!(n >= 2, "complete graph needs n >= 2");
		let mult = (0..n)
			.map(|u| (0..n).map(|v| i64::from(u != v)).collect())
			.collect();
		Multigraph::new(mult).expect("complete graph is valid")
	}

	/// Two vertices joined by r parallel edges (r >= 1).
	pub fn dipole(r: i64) -> Self {
		assert!(r >= 1, "dipole needs r >= 1");
		Multigraph::new(vec![vec![0, r], vec![r, 0]]).expect("dipole is valid")
	}

	/// Parses the text format: first line "n <count>", then lines "u v m"
	/// (1-based endpoints, multiplicity m >= 1); '#' starts a comment.
	pub fn parse(text: &str) -> Result<Self, GraphError> {
		let mut n: Option<usize> = None;
		let mut mult: Vec<Vec<i64>> = Vec::new();
		for (idx, raw) in text.lines().enumerate() {
			let line_no = idx + 1;
			let line = raw.split('#').next().unwrap_or("").trim();
			if line.is_empty() {
				continue;
			}
			let fields: Vec<&str> = line.split_whitespace().collect();
			match n {
				None => {
					if fields.len() != 2 || fields[0] != "n" {
						return Err(GraphError::Parse {
							line: line_no,
							detail: "expected header \"n <count>\"".into(),
						});
					}
					let count: usize = fields[1].parse().map_err(|_| GraphError::Parse {
						line: line_no,
						detail: format!("bad vertex count {:?}", fields[1]),
					})?;
					if count == 0 {
						return Err(GraphError::Empty);
					}
					mult = vec![vec![0; count]; count];
					n = Some(count);
				}
				Some(count) => {
					if fields.len() != 3 {
						return Err(GraphError::Parse {
							line: line_no,
							detail: "expected edge line \"u v m\"".into(),
						});
					}
					let parse_field = |s: &str| -> Result<i64, GraphError> {
						s.parse().map_err(|_| GraphError::Parse {
							line: line_no,
							detail: format!("bad number {s:?}"),
						})
					};
					let u = parse_field(fields[0])?;
					let v = parse_field(fields[1])?;
					let m = parse_field(fields[2])?;
					let in_range = |x: i64| x >= 1 && x <= count as i64;
					if !in_range(u) || !in_range(v) {
						return Err(GraphError::Parse {
							line: line_no,
							detail: format!("endpoint out of range in \"{line}\""),
						});
					}
					if u == v {
						return Err(GraphError::SelfLoop { vertex: u as usize });
					}
					if m < 1 {
						return Err(GraphError::Parse {
							line: line_no,
							detail: format!("multiplicity must be >= 1, got {m}"),
						});
					}
					let (a, b) = (u as usize - 1, v as usize - 1);
					mult[a][b] = exact::add(mult[a][b], m);
					mult[b][a] = mult[a][b];
				}
			}
		}
		match n {
			None => Err(GraphError::Parse {
				line: 0,
				detail: "empty graph file".into(),
			}),
			Some(_) => Multigraph::new(mult),
		}
	}

	pub fn n(&self) -> usize {
		self.mult.len()
	}

	pub fn multiplicity(&self, u: usize, v: usize) -> i64 {
		self.mult[u - 1][v - 1]
	}

	pub fn vertex_degree(&self, v: usize) -> i64 {
		self.degrees[v - 1]
	}

	pub fn edge_count(&self) -> i64 {
		self.edge_count
	}

	/// Laplacian matrix D - A.
	pub fn laplacian(&self) -> Vec<Vec<i64>> {
		let n = self.n();
		(0..n)
			.map(|u| {
				(0..n)
					.map(|v| if u == v { self.degrees[u] } else { exact::neg(self.mult[u][v]) })
					.collect()
			})
			.collect()
	}

	pub fn genus(&self) -> i64 {
		exact::sub(exact::add(1, self.edge_count), self.n() as i64)
	}

	/// Canonical divisor (deg_G(v_i) - 2)_i.
	pub fn canonical_divisor(&self) -> LatticePoint {
		LatticePoint::new(self.degrees.iter().map(|&d| d - 2).collect())
	}

	fn assert_divisor(&self, d: &LatticePoint) {
		assert_eq!(
			d.n(),
			self.n(),
			"divisor has {} coordinates but the graph has {} vertices",
			d.n(),
			self.n()
		);
	}

	/// Unique q-reduced divisor equivalent to d (q = v_n): nonnegative off q
	/// and no nonempty subset of V - q can fire without going negative.
	pub fn q_reduce(&self, d: &LatticePoint) -> LatticePoint {
		self.assert_divisor(d);
		let n = self.n();
		let q = n - 1;
		let mut cur: Vec<i64> = d.coords().to_vec();

		// Phase 1: make coordinates off q nonnegative by un-firing the outer
		// BFS layers; un-firing S_j = {dist >= j} pulls chips from layer j-1
		// into layer j and leaves deeper layers untouched.
		for j in (1..self.layers.len()).rev() {
			let mut t = 0i64;
			for &v in &self.layers[j] {
				if cur[v] < 0 {
					let e_v = exact::sum(
						self.layers[j - 1].iter().map(|&u| self.mult[u][v]),
					);
					debug_assert!(e_v > 0);
					let need = (-cur[v] + e_v - 1) / e_v;
					t = t.max(need);
				}
			}
			if t == 0 {
				continue;
			}
			for &v in &self.layers[j] {
				let gain = exact::sum(self.layers[j - 1].iter().map(|&u| self.mult[u][v]));
				cur[v] = exact::add(cur[v], exact::mul(t, gain));
			}
			for &u in &self.layers[j - 1] {
				let loss = exact::sum(self.layers[j].iter().map(|&v| self.mult[u][v]));
				cur[u] = exact::sub(cur[u], exact::mul(t, loss));
			}
		}
		debug_assert!((0..n).all(|v| v == q || cur[v] >= 0));

		// Phase 2: Dhar's burning loop. Fire the unburnt set until the fire
		// started at q consumes the whole graph.
		loop {
			let burnt = self.burn(&cur);
			let unburnt: Vec<usize> = (0..n).filter(|&v| !burnt[v]).collect();
			if unburnt.is_empty() {
				break;
			}
			for &v in &unburnt {
				let out = exact::sum((0..n).filter(|u| burnt[*u]).map(|u| self.mult[u][v]));
				cur[v] = exact::sub(cur[v], out);
			}
			for u in 0..n {
				if burnt[u] {
					let gain = exact::sum(unburnt.iter().map(|&v| self.mult[u][v]));
					cur[u] = exact::add(cur[u], gain);
				}
			}
		}
		LatticePoint::new(cur)
	}

	// Dhar's burning test: fire spreads from q; vertex v burns once the
	// multiplicity of edges to burnt vertices exceeds cur[v].
	fn burn(&self, cur: &[i64]) -> Vec<bool> {
		let n = self.n();
		let q = n - 1;
		let mut burnt = vec![false; n];
		burnt[q] = true;
		let mut threat = vec![0i64; n];
		let mut frontier = vec![q];
		while let Some(u) = frontier.pop() {
			for v in 0..n {
				if !burnt[v] && self.mult[u][v] > 0 {
					threat[v] = exact::add(threat[v], self.mult[u][v]);
					if threat[v] > cur[v] {
						burnt[v] = true;
						frontier.push(v);
					}
				}
			}
		}
		burnt
	}

	/// True when cur is already q-reduced (used by the representative scan).
	fn is_reduced_off_q(&self, cur: &[i64]) -> bool {
		let q = self.n() - 1;
		cur.iter().enumerate().all(|(v, &c)| v == q || c >= 0)
			&& self.burn(cur).iter().all(|&b| b)
	}

	pub fn is_equivalent(&self, d1: &LatticePoint, d2: &LatticePoint) -> bool {
		self.assert_divisor(d1);
		self.assert_divisor(d2);
		self.q_reduce(d1) == self.q_reduce(d2)
	}

	/// A divisor is winnable when some equivalent divisor is effective.
	pub fn is_winnable(&self, d: &LatticePoint) -> bool {
		let reduced = self.q_reduce(d);
		reduced.coords()[self.n() - 1] >= 0
	}

	/// Baker-Norine rank: -1 when not winnable, else one more than the worst
	/// single-chip removal. Memoized on q-reduced representatives.
	pub fn bn_rank(&self, d: &LatticePoint) -> i64 {
		self.assert_divisor(d);
		let deg = d.degree();
		if deg < 0 {
			return -1;
		}
		// Beyond this degree the rank is linear in the degree.
		if deg > 4 * self.edge_count {
			return exact::sub(deg, self.genus());
		}
		let reduced = self.q_reduce(d);
		let key = reduced.coords().to_vec();
		if let Some(&v) = self.rank_memo.lock().unwrap().get(&key) {
			return v;
		}
		let value = if reduced.coords()[self.n() - 1] < 0 {
			-1
		} else {
			let mut best = i64::MAX;
			for i in 1..=self.n() {
				let child = reduced.sub(&LatticePoint::unit(self.n(), i));
				best = best.min(self.bn_rank(&child));
			}
			exact::add(1, best)
		};
		self.rank_memo.lock().unwrap().insert(key, value);
		value
	}

	/// Riemann-Roch audit at d: rank(d) - rank(K - d) = deg(d) + 1 - g.
	pub fn check_riemann_roch(&self, d: &LatticePoint) -> bool {
		let k = self.canonical_divisor();
		let lhs = exact::sub(self.bn_rank(d), self.bn_rank(&k.sub(d)));
		lhs == exact::sub(exact::add(d.degree(), 1), self.genus())
	}

	/// All q-reduced divisors of degree i, scanned in lexicographic order of
	/// the off-q coordinates (each in [0, deg(v_j) - 1], d_n forced).
	pub fn pic_representatives(&self, i: i64) -> Vec<LatticePoint> {
		let n = self.n();
		let mut out = Vec::new();
		let mut cur = vec![0i64; n];
		self.pic_scan(0, i, &mut cur, &mut out);
		out
	}

	fn pic_scan(&self, j: usize, target: i64, cur: &mut Vec<i64>, out: &mut Vec<LatticePoint>) {
		let n = self.n();
		if j == n - 1 {
			cur[n - 1] = exact::sub(target, exact::sum(cur[..n - 1].iter().copied()));
			if self.is_reduced_off_q(cur) {
				out.push(LatticePoint::new(cur.clone()));
			}
			return;
		}
		for c in 0..self.degrees[j] {
			cur[j] = c;
			self.pic_scan(j + 1, target, cur, out);
		}
	}

	/// BFS distance of a vertex from q = v_n.
	pub fn distance_from_q(&self, v: usize) -> usize {
		self.dist[v - 1]
	}
}

impl std::fmt::Debug for Multigraph {
	fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
		f.debug_struct("Multigraph")
			.field("n", &self.n())
			.field("edge_count", &self.edge_count)
			.finish_non_exhaustive()
	}
}

/// The function f = 1 + bn_rank as a lattice function with its Riemann
/// metadata: zero up to degree -1, degree + (1 - g) from 2|E| - 2|V| + 1 on.
pub fn rank_fn(graph: &Arc<Multigraph>) -> IntLatticeFunction {
	let g = Arc::clone(graph);
	let n = graph.n();
	let eventual = exact::add(
		exact::sub(exact::mul(2, graph.edge_count()), 2 * n as i64),
		1,
	);
	let offset = exact::sub(1, graph.genus());
	IntLatticeFunction::new(n, move |d| exact::add(1, g.bn_rank(d)))
		.with_initial_zero(-1)
		.with_eventual(eventual, ModularRule::Offset(offset))
}
