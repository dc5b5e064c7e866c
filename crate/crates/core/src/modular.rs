//! Extension of functions on fundamental domains to modular functions on
//! Z^n: a closed form for the coordinate-axes domain, a two-directional
//! sweep for degree strips, and a staged engine driven by a cube ranking
//! for custom domains, plus a verifier for such rankings.
//!
//! A ranking r: Z^n -> {1, 2, ...} stages the extension. Writing D_m for
//! the domain together with every cube [c - 1, c] with r(c) <= m, a valid
//! ranking must (1) keep intersections of same-rank cubes inside the
//! previous stage and (2) let each cube contribute exactly one new point.
//! Under those rules each new point's value is forced by requiring the
//! alternating sum over its cube to vanish, and the result is the unique
//! modular extension.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::exact;
use crate::lattice::{IntLatticeFunction, LatticePoint, Window};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
	#[error("extension budget {budget} exceeded at {point} (stage {required})")]
	BudgetExceeded {
		point: LatticePoint,
		budget: i64,
		required: i64,
	},
	#[error("rank {rank} at {cube} is not positive")]
	NonpositiveRank { cube: LatticePoint, rank: i64 },
	#[error("cubes at {cube} and {other} share rank {rank} and the undetermined point {point}")]
	AmbiguousCube {
		cube: LatticePoint,
		other: LatticePoint,
		rank: i64,
		point: LatticePoint,
	},
	#[error("cube at {cube} with rank {rank} would determine {count} new points")]
	SingletonBroken {
		cube: LatticePoint,
		rank: i64,
		count: i64,
	},
}

/// A domain of Z^n whose functions extend uniquely to modular functions,
/// together with the cube ranking that drives the staged extension.
#[derive(Clone)]
pub enum DomainSpec {
	/// Points with at least one zero coordinate.
	CoordinateAxes { n: usize },
	/// Points with a <= degree <= a + n - 1.
	Strip { n: usize, a: i64 },
	/// Arbitrary membership predicate plus a caller-supplied ranking.
	Custom {
		n: usize,
		member: Arc<dyn Fn(&LatticePoint) -> bool + Send + Sync>,
		rank: Arc<dyn Fn(&LatticePoint) -> i64 + Send + Sync>,
	},
}

impl DomainSpec {
	pub fn coordinate_axes(n: usize) -> Self {
		assert!(n >= 1);
		DomainSpec::CoordinateAxes { n }
	}

	pub fn strip(n: usize, a: i64) -> Self {
		assert!(n >= 1);
		DomainSpec::Strip { n, a }
	}

	pub fn custom<M, R>(n: usize, member: M, rank: R) -> Self
	where
		M: Fn(&LatticePoint) -> bool + Send + Sync + 'static,
		R: Fn(&LatticePoint) -> i64 + Send + Sync + 'static,
	{
		assert!(n >= 1);
		DomainSpec::Custom {
			n,
			member: Arc::new(member),
			rank: Arc::new(rank),
		}
	}

	pub fn n(&self) -> usize {
		match self {
			DomainSpec::CoordinateAxes { n }
			| DomainSpec::Strip { n, .. }
			| DomainSpec::Custom { n, .. } => *n,
		}
	}

	pub fn contains(&self, d: &LatticePoint) -> bool {
		assert_eq!(d.n(), self.n(), "dimension mismatch");
		match self {
			DomainSpec::CoordinateAxes { .. } => d.coords().contains(&0),
			DomainSpec::Strip { n, a } => {
				let deg = d.degree();
				(*a..a + *n as i64).contains(&deg)
			}
			DomainSpec::Custom { member, .. } => member(d),
		}
	}

	/// The cube ranking: for the built-in domains, the stage at which the
	/// cube [d - 1, d] joins the extension.
	pub fn rank(&self, d: &LatticePoint) -> i64 {
		assert_eq!(d.n(), self.n(), "dimension mismatch");
		match self {
			DomainSpec::CoordinateAxes { .. } => {
				let spread = exact::sum(d.coords().iter().map(|&c| (c - 1).max(-c)));
				exact::add(1, spread)
			}
			DomainSpec::Strip { n, a } => {
				let nn = *n as i64;
				let deg = d.degree();
				if deg >= a + nn {
					exact::add(exact::sub(deg, *a), nn + 1)
				} else {
					exact::sub(exact::add(*a, nn), deg)
				}
			}
			DomainSpec::Custom { rank, .. } => rank(d),
		}
	}
}

impl std::fmt::Debug for DomainSpec {
	fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
		match self {
			DomainSpec::CoordinateAxes { n } => write!(f, "CoordinateAxes {{ n: {n} }}"),
			DomainSpec::Strip { n, a } => write!(f, "Strip {{ n: {n}, a: {a} }}"),
			DomainSpec::Custom { n, .. } => write!(f, "Custom {{ n: {n}, .. }}"),
		}
	}
}

/// The origin together with both unit-degree shells of Z^2, with a ranking
/// that fills the zero-degree diagonal outward from the origin and then
/// climbs away degree by degree.
pub fn shell_domain() -> DomainSpec {
	DomainSpec::custom(
		2,
		|d: &LatticePoint| {
			let deg = d.degree();
			deg.abs() == 1 || (d.get(1) == 0 && d.get(2) == 0)
		},
		|d: &LatticePoint| {
			let x = d.get(1);
			let deg = d.degree();
			if deg == 1 {
				x.max(1 - x)
			} else if deg >= 2 {
				(x - 1).max(2 - x) + 2 * (deg - 1)
			} else {
				x.max(1 - x) + 2 * (1 - deg) - 1
			}
		},
	)
}

/// A total evaluation rule on a domain.
#[derive(Clone)]
pub struct DomainFunction {
	spec: DomainSpec,
	f: Arc<dyn Fn(&LatticePoint) -> i64 + Send + Sync>,
}

impl DomainFunction {
	pub fn new<F>(spec: DomainSpec, f: F) -> Self
	where
		F: Fn(&LatticePoint) -> i64 + Send + Sync + 'static,
	{
		DomainFunction {
			spec,
			f: Arc::new(f),
		}
	}

	pub fn spec(&self) -> &DomainSpec {
		&self.spec
	}

	pub fn n(&self) -> usize {
		self.spec.n()
	}

	/// The value at a domain point; None off the domain.
	pub fn eval(&self, d: &LatticePoint) -> Option<i64> {
		self.spec.contains(d).then(|| (self.f)(d))
	}
}

fn parity_sign(k: u32) -> i64 {
	if k.is_multiple_of(2) {
		1
	} else {
		-1
	}
}

/// d with the coordinates outside the mask zeroed.
fn masked(d: &LatticePoint, mask: u32) -> LatticePoint {
	let coords = d
		.coords()
		.iter()
		.enumerate()
		.map(|(i, &c)| if mask & (1 << i) != 0 { c } else { 0 })
		.collect();
	LatticePoint::new(coords)
}

/// d - e_I for the subset I encoded by the mask.
fn sub_masked(d: &LatticePoint, mask: u32) -> LatticePoint {
	let coords = d
		.coords()
		.iter()
		.enumerate()
		.map(|(i, &c)| if mask & (1 << i) != 0 { exact::sub(c, 1) } else { c })
		.collect();
	LatticePoint::new(coords)
}

/// Value at d of the unique modular extension of a coordinate-axes
/// function: the alternating sum of f over all proper-subset zeroings of d.
pub fn coord_extend(f: &DomainFunction, d: &LatticePoint) -> i64 {
	let n = f.n();
	assert!(
		matches!(f.spec(), DomainSpec::CoordinateAxes { .. }),
		"coord_extend needs a coordinate-axes domain"
	);
	assert_eq!(d.n(), n, "dimension mismatch");
	let full: u32 = (1 << n) - 1;
	let mut acc = 0i64;
	for mask in 0..full {
		let p = masked(d, mask);
		let value = f.eval(&p).expect("proper zeroings stay in the domain");
		let sign = parity_sign(n as u32 - 1 - mask.count_ones());
		acc = exact::add(acc, exact::mul(sign, value));
	}
	acc
}

/// Splits the extension of a coordinate-axes function into n rules, the
/// i-th independent of the i-th coordinate, summing to the extension.
/// Terms are grouped by the lowest coordinate their zeroing drops.
pub fn coord_decompose(f: &DomainFunction) -> Vec<IntLatticeFunction> {
	let n = f.n();
	assert!(
		matches!(f.spec(), DomainSpec::CoordinateAxes { .. }),
		"coord_decompose needs a coordinate-axes domain"
	);
	(1..=n)
		.map(|i| {
			let f = f.clone();
			IntLatticeFunction::new(n, move |d| {
				// Masks omitting axis i but keeping every axis below it.
				let low: u32 = (1 << (i - 1)) - 1;
				let mut acc = 0i64;
				for rest in 0u32..(1 << (n - i)) {
					let mask = low | (rest << i);
					let value = f.eval(&masked(d, mask)).expect("zeroing stays in the domain");
					let sign = parity_sign(n as u32 - 1 - mask.count_ones());
					acc = exact::add(acc, exact::mul(sign, value));
				}
				acc
			})
		})
		.collect()
}

const DEFAULT_BUDGET: i64 = 2_500;

/// Memoized two-directional sweep extending a strip function to all of Z^n.
///
/// Above the strip the vanishing alternating sum over [d - 1, d] is solved
/// for the top point; below it, the same sum over [d, d + 1] is solved for
/// the bottom point. Points farther than the budget from the strip raise a
/// resource error instead of recursing without bound.
pub struct StripExtension {
	source: DomainFunction,
	n: usize,
	a: i64,
	budget: i64,
	memo: HashMap<LatticePoint, i64>,
}

impl StripExtension {
	pub fn new(source: DomainFunction) -> Self {
		let (n, a) = match source.spec() {
			DomainSpec::Strip { n, a } => (*n, *a),
			other => panic!("strip extension needs a strip domain, got {other:?}"),
		};
		StripExtension {
			source,
			n,
			a,
			budget: DEFAULT_BUDGET,
			memo: HashMap::new(),
		}
	}

	pub fn with_budget(mut self, budget: i64) -> Self {
		assert!(budget >= 0);
		self.budget = budget;
		self
	}

	pub fn eval(&mut self, d: &LatticePoint) -> Result<i64, ExtendError> {
		assert_eq!(d.n(), self.n, "dimension mismatch");
		let deg = d.degree();
		let top = self.a + self.n as i64 - 1;
		let required = if deg > top {
			deg - top
		} else if deg < self.a {
			self.a - deg
		} else {
			0
		};
		if required > self.budget {
			return Err(ExtendError::BudgetExceeded {
				point: d.clone(),
				budget: self.budget,
				required,
			});
		}
		Ok(self.eval_inner(d))
	}

	fn eval_inner(&mut self, d: &LatticePoint) -> i64 {
		if let Some(&v) = self.memo.get(d) {
			return v;
		}
		let deg = d.degree();
		let nn = self.n as i64;
		let full: u32 = (1 << self.n) - 1;
		let v = if (self.a..self.a + nn).contains(&deg) {
			self.source.eval(d).expect("strip point")
		} else if deg >= self.a + nn {
			let mut acc = 0i64;
			for mask in 1..=full {
				let q = sub_masked(d, mask);
				let sign = parity_sign(mask.count_ones() + 1);
				acc = exact::add(acc, exact::mul(sign, self.eval_inner(&q)));
			}
			acc
		} else {
			let up = d.add(&LatticePoint::ones(self.n));
			let mut acc = 0i64;
			for mask in 0..full {
				let q = sub_masked(&up, mask);
				let sign = parity_sign(mask.count_ones());
				acc = exact::add(acc, exact::mul(sign, self.eval_inner(&q)));
			}
			exact::mul(parity_sign(self.n as u32 + 1), acc)
		};
		self.memo.insert(d.clone(), v);
		v
	}
}

/// Staged extension of a domain function driven by the domain's ranking.
///
/// A point outside the domain is owned by the least-rank cube containing
/// it; the other cube points all belong to strictly earlier stages, so
/// recursion terminates, and the vanishing alternating sum over the owning
/// cube forces the value. Rank defects discovered along the way (a
/// nonpositive rank, two least-rank cubes, a cube with several new points)
/// surface as errors naming the offending cube.
pub struct CubismExtension {
	source: DomainFunction,
	budget: i64,
	memo: HashMap<LatticePoint, i64>,
}

impl CubismExtension {
	pub fn new(source: DomainFunction) -> Self {
		CubismExtension {
			source,
			budget: DEFAULT_BUDGET,
			memo: HashMap::new(),
		}
	}

	pub fn with_budget(mut self, budget: i64) -> Self {
		assert!(budget >= 0);
		self.budget = budget;
		self
	}

	pub fn eval(&mut self, p: &LatticePoint) -> Result<i64, ExtendError> {
		assert_eq!(p.n(), self.source.n(), "dimension mismatch");
		if let Some(&v) = self.memo.get(p) {
			return Ok(v);
		}
		if let Some(v) = self.source.eval(p) {
			self.memo.insert(p.clone(), v);
			return Ok(v);
		}
		let spec = self.source.spec().clone();
		let n = spec.n();
		let (stage, owners) = stage_of(&spec, p)?;
		if stage > self.budget {
			return Err(ExtendError::BudgetExceeded {
				point: p.clone(),
				budget: self.budget,
				required: stage,
			});
		}
		if owners.len() > 1 {
			return Err(ExtendError::AmbiguousCube {
				cube: owners[0].clone(),
				other: owners[1].clone(),
				rank: stage,
				point: p.clone(),
			});
		}
		let cube = owners.into_iter().next().expect("nonempty by construction");
		// Every other cube point must be settled strictly earlier.
		let full: u32 = (1 << n) - 1;
		let mut fresh = 0i64;
		for mask in 0..=full {
			let q = sub_masked(&cube, mask);
			if !spec.contains(&q) {
				let (qs, _) = stage_of(&spec, &q)?;
				if qs >= stage {
					fresh += 1;
				}
			}
		}
		if fresh != 1 {
			return Err(ExtendError::SingletonBroken {
				cube,
				rank: stage,
				count: fresh,
			});
		}
		let mut acc = 0i64;
		let mut own_sign = 0i64;
		for mask in 0..=full {
			let q = sub_masked(&cube, mask);
			let sign = parity_sign(mask.count_ones());
			if &q == p {
				own_sign = sign;
			} else {
				acc = exact::add(acc, exact::mul(sign, self.eval(&q)?));
			}
		}
		let v = exact::mul(exact::neg(own_sign), acc);
		self.memo.insert(p.clone(), v);
		Ok(v)
	}
}

/// The least rank among the cubes containing p, with all cubes attaining
/// it. Errors if any inspected rank fails to be positive.
fn stage_of(
	spec: &DomainSpec,
	p: &LatticePoint,
) -> Result<(i64, Vec<LatticePoint>), ExtendError> {
	let n = spec.n();
	let full: u32 = (1 << n) - 1;
	let mut best = i64::MAX;
	let mut owners = Vec::new();
	for mask in 0..=full {
		let c = add_masked(p, mask);
		let r = spec.rank(&c);
		if r < 1 {
			return Err(ExtendError::NonpositiveRank { cube: c, rank: r });
		}
		if r < best {
			best = r;
			owners.clear();
			owners.push(c);
		} else if r == best {
			owners.push(c);
		}
	}
	Ok((best, owners))
}

/// p + e_I for the subset I encoded by the mask.
fn add_masked(p: &LatticePoint, mask: u32) -> LatticePoint {
	let coords = p
		.coords()
		.iter()
		.enumerate()
		.map(|(i, &c)| if mask & (1 << i) != 0 { exact::add(c, 1) } else { c })
		.collect();
	LatticePoint::new(coords)
}

/// Outcome of checking the two ranking conditions over a region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubismReport {
	pub holds: bool,
	pub first_violation: Option<ExtendError>,
}

/// Checks both ranking conditions for every cube centered in the region, in
/// the region's fixed point order: each cube must add exactly one point not
/// settled earlier, and no two same-rank cubes may share their new point.
pub fn verify_cubism(spec: &DomainSpec, region: &Window) -> CubismReport {
	assert_eq!(spec.n(), region.n(), "dimension mismatch");
	let n = spec.n();
	let full: u32 = (1 << n) - 1;
	let mut violation: Option<ExtendError> = None;
	region.for_each_point(|d| {
		if violation.is_some() {
			return;
		}
		let m = spec.rank(d);
		if m < 1 {
			violation = Some(ExtendError::NonpositiveRank {
				cube: d.clone(),
				rank: m,
			});
			return;
		}
		let mut fresh = Vec::new();
		for mask in 0..=full {
			let q = sub_masked(d, mask);
			if spec.contains(&q) {
				continue;
			}
			match stage_of(spec, &q) {
				Ok((qs, _)) => {
					if qs >= m {
						fresh.push(q);
					}
				}
				Err(e) => {
					violation = Some(e);
					return;
				}
			}
		}
		if fresh.len() != 1 {
			violation = Some(ExtendError::SingletonBroken {
				cube: d.clone(),
				rank: m,
				count: fresh.len() as i64,
			});
			return;
		}
		let t = &fresh[0];
		for mask in 0..=full {
			let c = add_masked(t, mask);
			if &c != d && spec.rank(&c) == m {
				violation = Some(ExtendError::AmbiguousCube {
					cube: d.clone(),
					other: c,
					rank: m,
					point: t.clone(),
				});
				return;
			}
		}
	});
	CubismReport {
		holds: violation.is_none(),
		first_violation: violation,
	}
}
