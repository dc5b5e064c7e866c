//! Duality on Riemann functions: K-duals, reflected weight tables,
//! self-duality search, growth and periodicity predicates, two-variable
//! restrictions, and matching extraction for two-variable weights.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use serde::Serialize;
use thiserror::Error;

use crate::exact;
use crate::lattice::{
	mobius_at, window_order, IntLatticeFunction, LatticePoint, ModularRule, WeightTable, Window,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RiemannError {
	#[error("function has no initial zero degree")]
	MissingInitialZero,
	#[error("function has no modular rule")]
	MissingModularRule,
	#[error("entry {value} at {point} is outside {{0, 1}}")]
	MixedSign { point: LatticePoint, value: i64 },
	#[error("row {row} carries {sum} unit entries, want exactly 1")]
	RowSum { row: i64, sum: i64 },
	#[error("two rows both map to column {column}")]
	DuplicateTarget { column: i64 },
}

/// An initially-zero lattice function that eventually equals its declared
/// modular rule. Construction only checks that the metadata is present;
/// `probe_riemann` audits the behavior itself.
#[derive(Clone, Debug)]
pub struct RiemannFunction {
	base: IntLatticeFunction,
}

impl RiemannFunction {
	pub fn new(base: IntLatticeFunction) -> Result<Self, RiemannError> {
		if base.initial_zero_degree().is_none() {
			return Err(RiemannError::MissingInitialZero);
		}
		if base.rule().is_none() {
			return Err(RiemannError::MissingModularRule);
		}
		Ok(RiemannFunction { base })
	}

	pub fn base(&self) -> &IntLatticeFunction {
		&self.base
	}

	pub fn n(&self) -> usize {
		self.base.n()
	}

	pub fn eval(&self, d: &LatticePoint) -> i64 {
		self.base.eval(d)
	}

	pub fn initial_zero_degree(&self) -> i64 {
		self.base.initial_zero_degree().expect("validated on construction")
	}

	pub fn eventual_degree(&self) -> i64 {
		self.base.eventual_degree().expect("validated on construction")
	}

	pub fn rule(&self) -> &ModularRule {
		self.base.rule().expect("validated on construction")
	}

	/// The constant C when the rule is plain degree + C.
	pub fn offset(&self) -> Option<i64> {
		self.rule().offset()
	}
}

/// The K-dual d -> f(K - d) - h(K - d), with h the declared rule of f.
///
/// The dual is zero for degree <= deg(K) - b and follows the rule
/// d -> -h(K - d) from degree deg(K) - a on, where [a, b] is the metadata
/// band of f; a plain offset C turns into -C - deg(K). Applying the
/// construction twice gives back f.
pub fn dual_function(f: &RiemannFunction, k: &LatticePoint) -> RiemannFunction {
	assert_eq!(f.n(), k.n(), "dimension mismatch in dual_function");
	let n = f.n();
	let kdeg = k.degree();
	let a = f.initial_zero_degree();
	let b = f.eventual_degree();
	let rule = f.rule().clone();

	let dual_rule = match &rule {
		ModularRule::Offset(c) => ModularRule::Offset(exact::neg(exact::add(*c, kdeg))),
		ModularRule::Custom(_) => {
			let rule = rule.clone();
			let k = k.clone();
			ModularRule::Custom(std::sync::Arc::new(move |d: &LatticePoint| {
				exact::neg(rule.eval(&k.sub(d)))
			}))
		}
	};

	let inner = f.base().clone();
	let k = k.clone();
	let base = IntLatticeFunction::new(n, move |d| {
		let kd = k.sub(d);
		exact::sub(inner.eval(&kd), rule.eval(&kd))
	})
	.with_initial_zero(exact::sub(kdeg, b))
	.with_eventual(exact::sub(kdeg, a), dual_rule);
	RiemannFunction::new(base).expect("dual carries full metadata")
}

/// The table of d -> W(L - d) on the window reflected through L.
pub fn dual_weight(table: &WeightTable, l: &LatticePoint) -> WeightTable {
	assert_eq!(table.n(), l.n(), "dimension mismatch in dual_weight");
	let window = table.window().reflect(l);
	let entries = table.support().into_iter().map(|(d, w)| (l.sub(&d), w));
	WeightTable::from_entries(window, entries)
}

pub const DUAL_WEIGHT_IDENTITY: &str = "dual-weight-transport";

/// Outcome of a pointwise duality audit over a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
	pub identity: &'static str,
	pub window: Window,
	pub holds: bool,
	pub first_violation: Option<LatticePoint>,
}

/// Audits, at every window point d, that the difference operator applied to
/// the K-dual of f equals (-1)^n times the reflection of f's weight through
/// L = K + 1.
pub fn check_dual_weight_identity(
	f: &RiemannFunction,
	k: &LatticePoint,
	window: &Window,
) -> IdentityReport {
	let dual = dual_function(f, k);
	audit_dual_weight(dual.base(), f, k, window)
}

/// Same audit against a caller-supplied candidate for the dual; lets callers
/// inject faults to confirm the check has teeth.
pub fn audit_dual_weight(
	candidate_dual: &IntLatticeFunction,
	f: &RiemannFunction,
	k: &LatticePoint,
	window: &Window,
) -> IdentityReport {
	assert_eq!(f.n(), window.n(), "dimension mismatch in duality audit");
	let n = f.n();
	let sign: i64 = if n.is_multiple_of(2) { 1 } else { -1 };
	let l = k.add(&LatticePoint::ones(n));
	let mut first = None;
	window.for_each_point(|d| {
		if first.is_some() {
			return;
		}
		let lhs = mobius_at(candidate_dual, d);
		let rhs = exact::mul(sign, mobius_at(f.base(), &l.sub(d)));
		if lhs != rhs {
			first = Some(d.clone());
		}
	});
	IdentityReport {
		identity: DUAL_WEIGHT_IDENTITY,
		window: window.clone(),
		holds: first.is_none(),
		first_violation: first,
	}
}

/// Looks for L with W(L - d) = (-1)^n W(d) across the table's window.
///
/// Any valid L maps support onto support, so only sums of two support points
/// are candidates; they are tried in window order and the first survivor is
/// returned. A point reflecting below the window's degree band counts as
/// zero; one escaping through the sides of the box is not checkable and is
/// skipped. Vacuous candidates (no support point checked) are rejected.
pub fn find_self_duality(table: &WeightTable) -> Option<LatticePoint> {
	let support = table.support();
	if support.is_empty() {
		return None;
	}
	let sign: i64 = if table.n().is_multiple_of(2) { 1 } else { -1 };
	// Reflection swaps the lowest and highest support slices, which pins
	// the translation's degree and keeps box truncation from admitting
	// translations whose defects all escape sideways.
	let deg_lo = support.iter().map(|(s, _)| s.degree()).min().expect("nonempty");
	let deg_hi = support.iter().map(|(s, _)| s.degree()).max().expect("nonempty");
	let target = exact::add(deg_lo, deg_hi);
	let mut seen = BTreeSet::new();
	let mut candidates = Vec::new();
	for (s, _) in &support {
		for (t, _) in &support {
			let l = s.add(t);
			if l.degree() == target && seen.insert(l.clone()) {
				candidates.push(l);
			}
		}
	}
	candidates.sort_by(window_order);
	candidates
		.into_iter()
		.find(|l| reflects_onto_self(table, l, sign))
}

fn reflects_onto_self(table: &WeightTable, l: &LatticePoint, sign: i64) -> bool {
	let window = table.window();
	// Support must land on matching values; below-band reflections are
	// certified zeros and disqualify immediately.
	for (s, w) in table.support() {
		let x = l.sub(&s);
		if window.contains(&x) {
			if table.lookup(&x) != Some(exact::mul(sign, w)) {
				return false;
			}
		} else if x.degree() < window.degree_min() {
			return false;
		}
	}
	let mut ok = true;
	let mut checked_support = false;
	window.for_each_point(|d| {
		if !ok {
			return;
		}
		let wd = table.lookup(d).expect("window point");
		let x = l.sub(d);
		if window.contains(&x) {
			if table.lookup(&x) != Some(exact::mul(sign, wd)) {
				ok = false;
			} else if wd != 0 {
				checked_support = true;
			}
		} else if x.degree() < window.degree_min() && wd != 0 {
			ok = false;
		}
	});
	ok && checked_support
}

/// True when f(d) <= f(d + e_i) <= f(d) + 1 for every window point and axis.
pub fn is_slowly_growing(f: &IntLatticeFunction, window: &Window) -> bool {
	assert_eq!(f.n(), window.n(), "dimension mismatch");
	let n = f.n();
	let units: Vec<LatticePoint> = (1..=n).map(|i| LatticePoint::unit(n, i)).collect();
	let mut ok = true;
	window.for_each_point(|d| {
		if !ok {
			return;
		}
		let v = f.eval(d);
		for u in &units {
			let up = f.eval(&d.add(u));
			if up < v || up > exact::add(v, 1) {
				ok = false;
				return;
			}
		}
	});
	ok
}

/// True when f(d + p e_i - p e_j) = f(d) for all i != j over the window.
pub fn is_periodic(f: &IntLatticeFunction, p: i64, window: &Window) -> bool {
	assert!(p > 0, "period must be positive");
	assert_eq!(f.n(), window.n(), "dimension mismatch");
	let n = f.n();
	let mut ok = true;
	window.for_each_point(|d| {
		if !ok {
			return;
		}
		let v = f.eval(d);
		for i in 0..n {
			for j in 0..n {
				if i == j {
					continue;
				}
				let mut c = d.coords().to_vec();
				c[i] = exact::add(c[i], p);
				c[j] = exact::sub(c[j], p);
				if f.eval(&LatticePoint::new(c)) != v {
					ok = false;
					return;
				}
			}
		}
	});
	ok
}

/// Two-variable restriction through a base point:
/// (a_1, a_2) -> f(base + a_1 e_i + a_2 e_j), axes 1-based and distinct.
/// Requires a plain offset rule; the restriction is again Riemann with the
/// offset raised by deg(base) and the degree band lowered by it.
pub fn restrict(
	f: &RiemannFunction,
	base: &LatticePoint,
	i: usize,
	j: usize,
) -> RiemannFunction {
	let n = f.n();
	assert_eq!(base.n(), n, "dimension mismatch in restrict");
	assert!((1..=n).contains(&i) && (1..=n).contains(&j), "axis out of range");
	assert_ne!(i, j, "restriction axes must differ");
	let c = match f.rule() {
		ModularRule::Offset(c) => *c,
		ModularRule::Custom(_) => panic!("restriction requires a plain offset rule"),
	};
	let bdeg = base.degree();
	let inner = f.base().clone();
	let base = base.clone();
	let g = IntLatticeFunction::new(2, move |a| {
		let mut coords = base.coords().to_vec();
		coords[i - 1] = exact::add(coords[i - 1], a.get(1));
		coords[j - 1] = exact::add(coords[j - 1], a.get(2));
		inner.eval(&LatticePoint::new(coords))
	})
	.with_initial_zero(exact::sub(f.initial_zero_degree(), bdeg))
	.with_eventual(
		exact::sub(f.eventual_degree(), bdeg),
		ModularRule::Offset(exact::add(bdeg, c)),
	);
	RiemannFunction::new(g).expect("restriction carries full metadata")
}

/// A bijection segment i -> pi(i) read off a two-variable 0/1 weight table,
/// optionally skew-periodic: pi(i + r) = pi(i) - r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingPermutation {
	entries: Vec<(i64, i64)>,
	skew_period: Option<i64>,
}

impl MatchingPermutation {
	pub fn entries(&self) -> &[(i64, i64)] {
		&self.entries
	}

	pub fn apply(&self, i: i64) -> Option<i64> {
		self.entries.iter().find(|&&(k, _)| k == i).map(|&(_, v)| v)
	}

	pub fn skew_period(&self) -> Option<i64> {
		self.skew_period
	}
}

/// Reads the permutation with W(i, pi(i)) = 1 off the given rows of a
/// two-variable table. Fails on any entry outside {0, 1} in those rows, on a
/// row without exactly one unit, and on a repeated column.
pub fn extract_matching(
	table: &WeightTable,
	rows: RangeInclusive<i64>,
) -> Result<MatchingPermutation, RiemannError> {
	assert_eq!(table.n(), 2, "matchings live on two-variable tables");
	let support = table.support();
	let mut entries = Vec::new();
	let mut used = BTreeSet::new();
	for i in rows {
		let row: Vec<&(LatticePoint, i64)> =
			support.iter().filter(|(d, _)| d.get(1) == i).collect();
		for (d, w) in &row {
			if *w != 1 {
				return Err(RiemannError::MixedSign {
					point: d.clone(),
					value: *w,
				});
			}
		}
		if row.len() != 1 {
			return Err(RiemannError::RowSum {
				row: i,
				sum: row.len() as i64,
			});
		}
		let target = row[0].0.get(2);
		if !used.insert(target) {
			return Err(RiemannError::DuplicateTarget { column: target });
		}
		entries.push((i, target));
	}
	let skew_period = detect_skew(&entries);
	Ok(MatchingPermutation {
		entries,
		skew_period,
	})
}

fn detect_skew(entries: &[(i64, i64)]) -> Option<i64> {
	let len = entries.len() as i64;
	for r in 1..len {
		let mut observed = false;
		let mut ok = true;
		for &(i, pi) in entries {
			if let Some(&(_, pir)) = entries.iter().find(|&&(k, _)| k == i + r) {
				observed = true;
				if pir != pi - r {
					ok = false;
					break;
				}
			}
		}
		if ok && observed {
			return Some(r);
		}
	}
	None
}

#[cfg(test)]
mod tests {
	use super::*;
	use crate::graphs::{rank_fn, Multigraph};
	use crate::lattice::{probe_riemann, weight_table};
	use std::sync::Arc;

	fn pt(coords: &[i64]) -> LatticePoint {
		LatticePoint::new(coords.to_vec())
	}

	fn max_deg_plus_one() -> RiemannFunction {
		let base = IntLatticeFunction::new(2, |d: &LatticePoint| d.degree().max(-1) + 1)
			.with_initial_zero(-1)
			.with_eventual(-1, ModularRule::Offset(1));
		RiemannFunction::new(base).unwrap()
	}

	#[test]
	fn construction_requires_metadata() {
		let bare = IntLatticeFunction::new(2, |_: &LatticePoint| 0);
		assert_eq!(
			RiemannFunction::new(bare.clone()).unwrap_err(),
			RiemannError::MissingInitialZero
		);
		assert_eq!(
			RiemannFunction::new(bare.with_initial_zero(0)).unwrap_err(),
			RiemannError::MissingModularRule
		);
	}

	#[test]
	fn dual_of_max_degree_plus_one() {
		let f = max_deg_plus_one();
		let k = pt(&[0, 0]);
		let dual = dual_function(&f, &k);
		for x in -2..=2i64 {
			for y in -2..=2i64 {
				let d = pt(&[x, y]);
				let neg = pt(&[-x, -y]);
				let want = f.eval(&neg) - neg.degree() - 1;
				assert_eq!(dual.eval(&d), want, "at {d}");
			}
		}
		assert_eq!(dual.initial_zero_degree(), 1);
		assert_eq!(dual.eventual_degree(), 1);
		assert_eq!(dual.offset(), Some(-1));
		let probe = probe_riemann(dual.base(), &Window::symmetric(2, 5, -5, 5));
		assert!(probe.is_riemann(), "{probe:?}");
	}

	#[test]
	fn baker_norine_on_k3_is_self_dual() {
		let g = Arc::new(Multigraph::complete(3));
		let k = g.canonical_divisor();
		assert_eq!(k, pt(&[0, 0, 0]));
		let f = RiemannFunction::new(rank_fn(&g)).unwrap();
		let dual = dual_function(&f, &k);
		Window::symmetric(3, 3, -4, 5).for_each_point(|d| {
			assert_eq!(dual.eval(d), f.eval(d), "at {d}");
		});
		assert_eq!(dual.offset(), f.offset());
	}

	#[test]
	fn dual_is_an_involution() {
		let g = Arc::new(Multigraph::dipole(3));
		let f = RiemannFunction::new(rank_fn(&g)).unwrap();
		let k = pt(&[3, -1]);
		let double = dual_function(&dual_function(&f, &k), &k);
		Window::symmetric(2, 4, -5, 6).for_each_point(|d| {
			assert_eq!(double.eval(d), f.eval(d), "at {d}");
		});
		assert_eq!(double.initial_zero_degree(), f.initial_zero_degree());
		assert_eq!(double.eventual_degree(), f.eventual_degree());
		assert_eq!(double.offset(), f.offset());
	}

	#[test]
	fn dual_weight_reflects_entries() {
		let w = WeightTable::from_entries(
			Window::boxed(pt(&[0, 0]), pt(&[2, 2])),
			[(pt(&[0, 0]), 1)],
		);
		let dual = dual_weight(&w, &pt(&[2, 2]));
		assert_eq!(dual.lookup(&pt(&[2, 2])), Some(1));
		assert_eq!(dual.lookup(&pt(&[0, 0])), Some(0));
		assert_eq!(dual.support().len(), 1);
	}

	#[test]
	fn dual_weight_is_an_involution() {
		let g = Arc::new(Multigraph::dipole(2));
		let f = rank_fn(&g);
		let w = weight_table(&f, &Window::symmetric(2, 3, -2, 4)).unwrap();
		let l = pt(&[1, 2]);
		let back = dual_weight(&dual_weight(&w, &l), &l);
		assert_eq!(back.window(), w.window());
		assert_eq!(back.support(), w.support());
	}

	#[test]
	fn k3_weight_reflects_to_its_negative() {
		let g = Arc::new(Multigraph::complete(3));
		let f = rank_fn(&g);
		// Box and band chosen fixed under reflection through (1,1,1).
		let window = Window::banded(pt(&[-2, -2, -2]), pt(&[3, 3, 3]), -1, 4);
		let w = weight_table(&f, &window).unwrap();
		assert!(!w.is_empty());
		let dual = dual_weight(&w, &pt(&[1, 1, 1]));
		assert_eq!(dual.window(), &window);
		window.for_each_point(|d| {
			assert_eq!(
				dual.lookup(d).unwrap(),
				-w.lookup(d).unwrap(),
				"at {d}"
			);
		});
	}

	#[test]
	fn duality_identity_holds_for_dipole2() {
		let g = Arc::new(Multigraph::dipole(2));
		let f = RiemannFunction::new(rank_fn(&g)).unwrap();
		let k = pt(&[0, 0]);
		assert_eq!(g.canonical_divisor(), k);
		let window = Window::banded(pt(&[-3, -3]), pt(&[4, 4]), -2, 4);
		let report = check_dual_weight_identity(&f, &k, &window);
		assert!(report.holds, "{report:?}");
		assert_eq!(report.first_violation, None);
	}

	#[test]
	fn duality_audit_catches_an_injected_fault() {
		let g = Arc::new(Multigraph::dipole(2));
		let f = RiemannFunction::new(rank_fn(&g)).unwrap();
		let k = pt(&[0, 0]);
		let dual = dual_function(&f, &k);
		let clean = dual.base().clone();
		let corrupted = IntLatticeFunction::new(2, move |d| {
			let bump = i64::from(d == &pt(&[1, 1]));
			clean.eval(d) + bump
		});
		let window = Window::banded(pt(&[-3, -3]), pt(&[4, 4]), -2, 4);
		let report = audit_dual_weight(&corrupted, &f, &k, &window);
		assert!(!report.holds);
		assert_eq!(report.first_violation, Some(pt(&[1, 1])));
	}

	#[test]
	fn identity_report_serializes() {
		let g = Arc::new(Multigraph::dipole(1));
		let f = RiemannFunction::new(rank_fn(&g)).unwrap();
		let window = Window::symmetric(2, 2, -2, 2);
		let report = check_dual_weight_identity(&f, &pt(&[0, 0]), &window);
		let json = serde_json::to_value(&report).unwrap();
		assert_eq!(json["identity"], "dual-weight-transport");
		assert_eq!(json["holds"], true);
		assert!(json["first_violation"].is_null());
	}

	#[test]
	fn self_duality_of_k4() {
		let g = Arc::new(Multigraph::complete(4));
		let f = rank_fn(&g);
		let window = Window::banded(pt(&[-1, -1, -1, -1]), pt(&[3, 3, 3, 9]), -1, 9);
		let w = weight_table(&f, &window).unwrap();
		let l = find_self_duality(&w).expect("K_4 weights are self-dual");
		assert_eq!(l.degree(), 8);
		assert!(g.is_equivalent(&l, &pt(&[2, 2, 2, 2])));
	}

	#[test]
	fn self_duality_of_dipole3() {
		let g = Arc::new(Multigraph::dipole(3));
		let f = rank_fn(&g);
		let w = weight_table(&f, &Window::symmetric(2, 6, -2, 6)).unwrap();
		let l = find_self_duality(&w).expect("two-vertex weights are self-dual");
		assert_eq!(l.degree(), 4);
		assert!(g.is_equivalent(&l, &pt(&[2, 2])));
	}

	#[test]
	fn self_duality_small_tables() {
		let window = Window::boxed(pt(&[-1, -1]), pt(&[2, 2]));
		let symmetric = WeightTable::from_entries(
			window.clone(),
			[(pt(&[0, 0]), 1), (pt(&[1, 0]), 1)],
		);
		assert_eq!(find_self_duality(&symmetric), Some(pt(&[1, 0])));

		let lopsided = WeightTable::from_entries(
			window,
			[(pt(&[0, 0]), 1), (pt(&[1, 0]), 2)],
		);
		assert_eq!(find_self_duality(&lopsided), None);
	}

	#[test]
	fn slow_growth_examples() {
		let g = Arc::new(Multigraph::complete(3));
		let window = Window::symmetric(3, 2, -3, 4);
		assert!(is_slowly_growing(&rank_fn(&g), &window));

		let jumpy = IntLatticeFunction::new(3, |d: &LatticePoint| 2 * d.degree().max(0));
		assert!(!is_slowly_growing(&jumpy, &window));

		let flat = IntLatticeFunction::new(2, |d: &LatticePoint| d.get(1).max(0));
		assert!(is_slowly_growing(&flat, &Window::symmetric(2, 3, -6, 6)));
	}

	#[test]
	fn periodicity_examples() {
		let k3 = Arc::new(Multigraph::complete(3));
		let window3 = Window::symmetric(3, 2, -3, 4);
		assert!(is_periodic(&rank_fn(&k3), 3, &window3));
		assert!(!is_periodic(&rank_fn(&k3), 1, &window3));

		let dipole2 = Arc::new(Multigraph::dipole(2));
		let window2 = Window::symmetric(2, 3, -4, 5);
		assert!(is_periodic(&rank_fn(&dipole2), 2, &window2));

		let flat = IntLatticeFunction::new(2, |d: &LatticePoint| d.get(1).max(0));
		assert!(!is_periodic(&flat, 1, &window2));
	}

	#[test]
	fn restriction_of_k4_rank() {
		let g = Arc::new(Multigraph::complete(4));
		let f = RiemannFunction::new(rank_fn(&g)).unwrap();
		let r = restrict(&f, &pt(&[0, 0, 0, 0]), 1, 2);
		assert_eq!(r.eval(&pt(&[0, 0])), 1);
		assert_eq!(r.offset(), Some(-2));
		assert_eq!(r.initial_zero_degree(), -1);

		// Symmetry of K_4: any axis pair restricts to the same function.
		let alt = restrict(&f, &pt(&[0, 0, 0, 0]), 3, 4);
		Window::symmetric(2, 3, -4, 6).for_each_point(|d| {
			assert_eq!(r.eval(d), alt.eval(d), "at {d}");
		});

		let probe = probe_riemann(r.base(), &Window::symmetric(2, 8, -8, 8));
		assert!(probe.is_riemann(), "{probe:?}");
	}

	#[test]
	fn restriction_shifts_offset_by_base_degree() {
		let f = max_deg_plus_one();
		let base = pt(&[2, 1]);
		let r = restrict(&f, &base, 2, 1);
		assert_eq!(r.offset(), Some(4));
		for x in -3..=3i64 {
			for y in -3..=3i64 {
				let got = r.eval(&pt(&[x, y]));
				let want = f.eval(&pt(&[2 + y, 1 + x]));
				assert_eq!(got, want);
			}
		}
	}

	#[test]
	#[should_panic(expected = "axes must differ")]
	fn restriction_rejects_equal_axes() {
		let g = Arc::new(Multigraph::complete(3));
		let f = RiemannFunction::new(rank_fn(&g)).unwrap();
		let _ = restrict(&f, &pt(&[0, 0, 0]), 2, 2);
	}

	#[test]
	fn matching_of_single_edge_graph() {
		let g = Arc::new(Multigraph::dipole(1));
		let w = weight_table(&rank_fn(&g), &Window::symmetric(2, 5, -3, 5)).unwrap();
		let m = extract_matching(&w, -2..=2).unwrap();
		for i in -2..=2 {
			assert_eq!(m.apply(i), Some(-i));
		}
		assert_eq!(m.skew_period(), Some(1));
	}

	#[test]
	fn matching_of_triple_edge_graph() {
		let g = Arc::new(Multigraph::dipole(3));
		let w = weight_table(&rank_fn(&g), &Window::symmetric(2, 8, -3, 8)).unwrap();
		let m = extract_matching(&w, 0..=5).unwrap();
		let want = [(0, 0), (1, 1), (2, 2), (3, -3), (4, -2), (5, -1)];
		assert_eq!(m.entries(), &want);
		assert_eq!(m.skew_period(), Some(3));
	}

	#[test]
	fn matching_rejects_bad_tables() {
		let window = Window::boxed(pt(&[-2, -2]), pt(&[2, 2]));
		let doubled = WeightTable::from_entries(
			window.clone(),
			[(pt(&[0, 0]), 1), (pt(&[0, 1]), 1)],
		);
		assert_eq!(
			extract_matching(&doubled, 0..=0).unwrap_err(),
			RiemannError::RowSum { row: 0, sum: 2 }
		);

		let negative = WeightTable::from_entries(window.clone(), [(pt(&[0, 0]), -1)]);
		assert_eq!(
			extract_matching(&negative, 0..=0).unwrap_err(),
			RiemannError::MixedSign {
				point: pt(&[0, 0]),
				value: -1
			}
		);

		let clash = WeightTable::from_entries(
			window,
			[(pt(&[0, 1]), 1), (pt(&[1, 1]), 1)],
		);
		assert_eq!(
			extract_matching(&clash, 0..=1).unwrap_err(),
			RiemannError::DuplicateTarget { column: 1 }
		);
	}
}
