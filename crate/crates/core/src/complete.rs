//! Fast arithmetic on complete graphs K_n.
//!
//! Divisor classes of K_n have canonical representatives with coordinates
//! a_1..a_{n-2} in [0, n), a_{n-1} = 0 and a_n free (the A-representative),
//! or equivalently a residue tuple b plus a degree (the B-coordinate). In
//! these coordinates the Baker-Norine rank admits a closed form that buckets
//! residues and runs in O(n) time, against the O(n * deg) counting loop and
//! the generic chip-firing engine.

use crate::exact;
use crate::lattice::{IntLatticeFunction, LatticePoint, ModularRule};

/// Canonical class representative of a K_n divisor: a_j in [0, n) for
/// j <= n-2, a_{n-1} = 0, a_n unconstrained.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ARep {
	n: usize,
	a: Vec<i64>,
}

impl ARep {
	pub fn new(n: usize, a: Vec<i64>) -> Self {
		assert!(n >= 2, "K_n coordinates need n >= 2");
		assert_eq!(a.len(), n, "A-representative needs n coordinates");
		assert!(
			a[..n - 2].iter().all(|&c| (0..n as i64).contains(&c)),
			"A-representative residues must lie in [0, n)"
		);
		assert_eq!(a[n - 2], 0, "A-representative fixes a_(n-1) = 0");
		ARep { n, a }
	}

	pub fn n(&self) -> usize {
		self.n
	}

	pub fn coords(&self) -> &[i64] {
		&self.a
	}

	pub fn degree(&self) -> i64 {
		exact::sum(self.a.iter().copied())
	}

	pub fn point(&self) -> LatticePoint {
		LatticePoint::new(self.a.clone())
	}
}

/// Class written as residues b_1..b_{n-2} (each in [0, n)) plus a degree i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BCoord {
	n: usize,
	b: Vec<i64>,
	i: i64,
}

impl BCoord {
	pub fn new(n: usize, b: Vec<i64>, i: i64) -> Self {
		assert!(n >= 2, "K_n coordinates need n >= 2");
		assert_eq!(b.len(), n - 2, "B-coordinate needs n-2 residues");
		assert!(
			b.iter().all(|&c| (0..n as i64).contains(&c)),
			"B-coordinate residues must lie in [0, n)"
		);
		BCoord { n, b, i }
	}

	pub fn n(&self) -> usize {
		self.n
	}

	pub fn residues(&self) -> &[i64] {
		&self.b
	}

	pub fn degree(&self) -> i64 {
		self.i
	}
}

fn modn(x: i64, n: usize) -> i64 {
	x.rem_euclid(n as i64)
}

/// A-representative of an arbitrary divisor: a_j = (d_j - d_{n-1}) mod n,
/// a_n soaks up the remaining degree.
pub fn to_a_rep(n: usize, d: &LatticePoint) -> ARep {
	assert!(n >= 2, "K_n coordinates need n >= 2");
	assert_eq!(d.n(), n, "dimension mismatch in to_a_rep");
	let c = d.coords();
	let pivot = c[n - 2];
	let mut a = vec![0i64; n];
	for j in 0..n - 2 {
		a[j] = modn(exact::sub(c[j], pivot), n);
	}
	let partial = exact::sum(a[..n - 2].iter().copied());
	a[n - 1] = exact::sub(d.degree(), partial);
	ARep { n, a }
}

pub fn to_b_coord(n: usize, d: &LatticePoint) -> BCoord {
	let a = to_a_rep(n, d);
	BCoord {
		n,
		b: a.a[..n - 2].to_vec(),
		i: a.degree(),
	}
}

/// The representative point <b, i> = (b_1,..,b_{n-2}, 0, i - sum b).
pub fn from_b_coord(c: &BCoord) -> LatticePoint {
	let mut coords = c.b.clone();
	coords.push(0);
	coords.push(exact::sub(c.i, exact::sum(c.b.iter().copied())));
	LatticePoint::new(coords)
}

/// Group law on classes: residues add mod n, degrees add.
pub fn pic_add(x: &BCoord, y: &BCoord) -> BCoord {
	assert_eq!(x.n, y.n, "dimension mismatch in pic_add");
	let b = x
		.b
		.iter()
		.zip(&y.b)
		.map(|(&p, &q)| modn(exact::add(p, q), x.n))
		.collect();
	BCoord {
		n: x.n,
		b,
		i: exact::add(x.i, y.i),
	}
}

pub fn pic_sub(x: &BCoord, y: &BCoord) -> BCoord {
	assert_eq!(x.n, y.n, "dimension mismatch in pic_sub");
	let b = x
		.b
		.iter()
		.zip(&y.b)
		.map(|(&p, &q)| modn(exact::sub(p, q), x.n))
		.collect();
	BCoord {
		n: x.n,
		b,
		i: exact::sub(x.i, y.i),
	}
}

/// 1 when the rank drops along e_{n-1} at this representative, i.e. when
/// sum of the residues is at most the degree (equivalently a_n >= 0).
pub fn rank_drop_indicator(a: &ARep) -> i64 {
	let s = exact::sum(a.a[..a.n - 2].iter().copied());
	i64::from(s <= a.degree())
}

/// Double difference (1 - t_n)(1 - t_{n-1}) of the rank at <b, i>:
/// 1 exactly when the residues sum to the degree.
pub fn double_diff_indicator(c: &BCoord) -> i64 {
	i64::from(exact::sum(c.b.iter().copied()) == c.i)
}

/// O(n) Baker-Norine rank on K_n via residue bucketing.
pub fn kn_rank(n: usize, d: &LatticePoint) -> i64 {
	let a = to_a_rep(n, d);
	let deg = a.degree();
	if deg < 0 {
		return -1;
	}
	let nn = n as i64;
	let res = &a.a[..n - 2];
	let s = exact::sum(res.iter().copied());

	// m[k] = #{j : a_j >= n - k}, via counts of each residue value.
	let mut value_counts = vec![0i64; n];
	for &r in res {
		value_counts[r as usize] += 1;
	}
	let mut count = 0i64;
	// g(k) = sum_j ((a_j + k) mod n) = s + k(n-2) - n*m_k.
	let mut m_k = 0i64;
	for k in 0..nn {
		if k > 0 {
			m_k = exact::add(m_k, value_counts[(nn - k) as usize]);
		}
		let g_k = exact::sub(
			exact::add(s, exact::mul(k, nn - 2)),
			exact::mul(nn, m_k),
		);
		let headroom = exact::sub(exact::sub(deg, g_k), k);
		if headroom >= 0 {
			count = exact::add(count, headroom / nn + 1);
		}
	}
	exact::sub(count, 1)
}

/// Reference rank: counts i in [0, deg] with sum_j ((a_j + i) mod n) <= deg - i.
pub fn kn_rank_direct(n: usize, d: &LatticePoint) -> i64 {
	let a = to_a_rep(n, d);
	let deg = a.degree();
	let mut count = 0i64;
	let mut i = 0i64;
	while i <= deg {
		let lhs = exact::sum(a.a[..n - 2].iter().map(|&r| modn(exact::add(r, i), n)));
		if lhs <= exact::sub(deg, i) {
			count = exact::add(count, 1);
		}
		i += 1;
	}
	exact::sub(count, 1)
}

fn binomial(n: i64, k: i64) -> i64 {
	if k < 0 || k > n {
		return 0;
	}
	let mut out = 1i64;
	for j in 0..k {
		out = exact::mul(out, n - j) / (j + 1);
	}
	out
}

/// Closed-form Mobius weight of 1 + rank on K_n: (-1)^l * C(n-2, l) on the
/// class of <0, n*l> for l in [0, n-2], zero elsewhere.
pub fn kn_weight(n: usize, d: &LatticePoint) -> i64 {
	let c = to_b_coord(n, d);
	if c.b.iter().any(|&r| r != 0) {
		return 0;
	}
	let nn = n as i64;
	if c.i.rem_euclid(nn) != 0 {
		return 0;
	}
	let l = c.i.div_euclid(nn);
	if !(0..=nn - 2).contains(&l) {
		return 0;
	}
	let coeff = binomial(nn - 2, l);
	if l % 2 == 0 {
		coeff
	} else {
		exact::neg(coeff)
	}
}

/// Value of (1 - t_1)...(1 - t_{n-2}) h at <b, i> for a residue-class
/// function h(<b, i>) = g(sum b - i): zero off b = 0, else the alternating
/// binomial sum of g at the points n*k - i.
pub fn weight_collapse<G: Fn(i64) -> i64>(g: G, c: &BCoord) -> i64 {
	if c.b.iter().any(|&r| r != 0) {
		return 0;
	}
	let nn = c.n as i64;
	let mut total = 0i64;
	for k in 0..=nn - 2 {
		let term = exact::mul(binomial(nn - 2, k), g(exact::sub(exact::mul(nn, k), c.i)));
		total = if k % 2 == 0 {
			exact::add(total, term)
		} else {
			exact::sub(total, term)
		};
	}
	total
}

/// f = 1 + kn_rank as a lattice function with Riemann metadata.
pub fn kn_rank_fn(n: usize) -> IntLatticeFunction {
	assert!(n >= 2);
	let nn = n as i64;
	let genus = (nn - 1) * (nn - 2) / 2;
	let eventual = nn * (nn - 1) - 2 * nn + 1;
	IntLatticeFunction::new(n, move |d| exact::add(1, kn_rank(n, d)))
		.with_initial_zero(-1)
		.with_eventual(eventual, ModularRule::Offset(1 - genus))
}
