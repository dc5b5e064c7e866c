//! Integer lattice points, windows, lattice functions and weight tables.
//!
//! The central objects are functions f: Z^n -> Z together with the Mobius
//! operator m = (1-t_1)...(1-t_n), where (t_i f)(d) = f(d - e_i), and the
//! accumulation operator (s W)(d) = sum of W over the down-cone {d' <= d}.
//! For functions that vanish at low degree the two operators are mutually
//! inverse, so W = m f is a complete description of f; `WeightTable` stores
//! the nonzero part of W on a finite window.
//!
//! Axis indices in the public API are 1-based throughout.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::exact;

/// A point of Z^n, n >= 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
	pub fn new(coords: Vec<i64>) -> Self {
		assert!(!coords.is_empty(), "lattice points need dimension n >= 1");
		LatticePoint(coords)
	}

	pub fn zero(n: usize) -> Self {
		Self::new(vec![0; n])
	}

	pub fn ones(n: usize) -> Self {
		Self::new(vec![1; n])
	}

	/// Standard basis vector e_i, 1-based.
	pub fn unit(n: usize, i: usize) -> Self {
		e_indicator(n, &[i])
	}

	pub fn n(&self) -> usize {
		self.0.len()
	}

	pub fn coords(&self) -> &[i64] {
		&self.0
	}

	pub fn get(&self, i: usize) -> i64 {
		assert!(
			(1..=self.n()).contains(&i),
			"axis {i} out of range for n={}",
			self.n()
		);
		self.0[i - 1]
	}

	pub fn degree(&self) -> i64 {
		exact::sum(self.0.iter().copied())
	}

	/// Componentwise order d <= other.
	pub fn leq(&self, other: &LatticePoint) -> bool {
		assert_eq!(self.n(), other.n(), "dimension mismatch in leq");
		self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
	}

	pub fn add(&self, other: &LatticePoint) -> LatticePoint {
		assert_eq!(self.n(), other.n(), "dimension mismatch in add");
		LatticePoint(
			self.0
				.iter()
				.zip(&other.0)
				.map(|(&a, &b)| exact::add(a, b))
				.collect(),
		)
	}

	pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
		assert_eq!(self.n(), other.n(), "dimension mismatch in sub");
		LatticePoint(
			self.0
				.iter()
				.zip(&other.0)
				.map(|(&a, &b)| exact::sub(a, b))
				.collect(),
		)
	}

	/// Key realizing the fixed window order: degree first, then lexicographic.
	pub fn window_key(&self) -> (i64, Vec<i64>) {
		(self.degree(), self.0.clone())
	}
}

impl fmt::Display for LatticePoint {
	fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
		write!(f, "(")?;
		for (k, c) in self.0.iter().enumerate() {
			if k > 0 {
				write!(f, ", ")?;
			}
			write!(f, "{c}")?;
		}
		write!(f, ")")
	}
}

impl fmt::Debug for LatticePoint {
	fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
		fmt::Display::fmt(self, f)
	}
}

/// Indicator sum e_I = sum of e_i over i in `axes` (1-based, distinct).
pub fn e_indicator(n: usize, axes: &[usize]) -> LatticePoint {
	let mut coords = vec![0i64; n];
	for &i in axes {
		assert!((1..=n).contains(&i), "axis {i} out of range for n={n}");
		assert_eq!(coords[i - 1], 0, "axis {i} repeated in indicator");
		coords[i - 1] = 1;
	}
	LatticePoint::new(coords)
}

/// Degree of a point (sum of coordinates).
pub fn degree(d: &LatticePoint) -> i64 {
	d.degree()
}

/// Finite box [lo, hi] intersected with a degree band [deg_min, deg_max].
///
/// Iteration order over window points is fixed: ascending degree, then
/// ascending lexicographic coordinate order. Serialized tables use it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
	lo: Vec<i64>,
	hi: Vec<i64>,
	degree_min: i64,
	degree_max: i64,
}

impl Window {
	/// Box window; the degree band defaults to everything the box allows.
	pub fn boxed(lo: LatticePoint, hi: LatticePoint) -> Self {
		let (dmin, dmax) = (lo.degree(), hi.degree());
		Self::banded(lo, hi, dmin, dmax)
	}

	pub fn banded(lo: LatticePoint, hi: LatticePoint, degree_min: i64, degree_max: i64) -> Self {
		assert_eq!(lo.n(), hi.n(), "dimension mismatch in window");
		assert!(lo.leq(&hi), "window needs lo <= hi, got {lo} and {hi}");
		Window {
			lo: lo.0,
			hi: hi.0,
			degree_min,
			degree_max,
		}
	}

	/// Symmetric box [-r, r]^n with degree band [deg_min, deg_max].
	pub fn symmetric(n: usize, r: i64, degree_min: i64, degree_max: i64) -> Self {
		Self::banded(
			LatticePoint::new(vec![-r; n]),
			LatticePoint::new(vec![r; n]),
			degree_min,
			degree_max,
		)
	}

	pub fn n(&self) -> usize {
		self.lo.len()
	}

	pub fn lo(&self) -> LatticePoint {
		LatticePoint::new(self.lo.clone())
	}

	pub fn hi(&self) -> LatticePoint {
		LatticePoint::new(self.hi.clone())
	}

	pub fn degree_min(&self) -> i64 {
		self.degree_min
	}

	pub fn degree_max(&self) -> i64 {
		self.degree_max
	}

	pub fn contains(&self, d: &LatticePoint) -> bool {
		assert_eq!(d.n(), self.n(), "dimension mismatch in window containment");
		let deg = d.degree();
		deg >= self.degree_min
			&& deg <= self.degree_max
			&& d.0.iter().zip(&self.lo).all(|(c, l)| c >= l)
			&& d.0.iter().zip(&self.hi).all(|(c, h)| c <= h)
	}

	/// Window reflected through l: {l - d : d in window}.
	pub fn reflect(&self, l: &LatticePoint) -> Window {
		let lo = l.sub(&self.hi());
		let hi = l.sub(&self.lo());
		let ld = l.degree();
		Window::banded(
			lo,
			hi,
			exact::sub(ld, self.degree_max),
			exact::sub(ld, self.degree_min),
		)
	}

	/// All window points in the fixed order.
	pub fn points(&self) -> Vec<LatticePoint> {
		let mut out = Vec::new();
		self.for_each_point(|p| out.push(p.clone()));
		out
	}

	/// Visits window points in the fixed order without materializing them.
	pub fn for_each_point<F: FnMut(&LatticePoint)>(&self, mut visit: F) {
		let lo_deg = exact::sum(self.lo.iter().copied());
		let hi_deg = exact::sum(self.hi.iter().copied());
		let dmin = self.degree_min.max(lo_deg);
		let dmax = self.degree_max.min(hi_deg);
		let mut deg = dmin;
		while deg <= dmax {
			let mut coords = vec![0i64; self.n()];
			self.slice_rec(deg, 0, &mut coords, &mut visit);
			deg += 1;
		}
	}

	// Fills coords[k..] with every completion of total `remaining` degree,
	// lexicographically, given suffix coordinate bounds.
	fn slice_rec<F: FnMut(&LatticePoint)>(
		&self,
		remaining: i64,
		k: usize,
		coords: &mut Vec<i64>,
		visit: &mut F,
	) {
		let n = self.n();
		if k == n {
			debug_assert_eq!(remaining, 0);
			let p = LatticePoint::new(coords.clone());
			visit(&p);
			*coords = p.0;
			return;
		}
		let suffix_lo: i64 = exact::sum(self.lo[k + 1..].iter().copied());
		let suffix_hi: i64 = exact::sum(self.hi[k + 1..].iter().copied());
		// remaining - c must be attainable by the suffix: in [suffix_lo, suffix_hi]
		let c_min = self.lo[k].max(exact::sub(remaining, suffix_hi));
		let c_max = self.hi[k].min(exact::sub(remaining, suffix_lo));
		let mut c = c_min;
		while c <= c_max {
			coords[k] = c;
			self.slice_rec(exact::sub(remaining, c), k + 1, coords, visit);
			c += 1;
		}
	}
}

/// How a lattice function behaves for large degree.
#[derive(Clone)]
pub enum ModularRule {
	/// f(d) = degree(d) + C eventually (the Riemann case).
	Offset(i64),
	/// f(d) = h(d) eventually for a declared modular h.
	Custom(Arc<dyn Fn(&LatticePoint) -> i64 + Send + Sync>),
}

impl ModularRule {
	pub fn eval(&self, d: &LatticePoint) -> i64 {
		match self {
			ModularRule::Offset(c) => exact::add(d.degree(), *c),
			ModularRule::Custom(h) => h(d),
		}
	}

	pub fn offset(&self) -> Option<i64> {
		match self {
			ModularRule::Offset(c) => Some(*c),
			ModularRule::Custom(_) => None,
		}
	}
}

impl fmt::Debug for ModularRule {
	fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
		match self {
			ModularRule::Offset(c) => write!(f, "Offset({c})"),
			ModularRule::Custom(_) => write!(f, "Custom(..)"),
		}
	}
}

/// Total function Z^n -> Z given by an evaluation rule plus optional
/// asymptotic metadata:
///  - `initial_zero_degree` a: f(d) = 0 whenever degree(d) <= a;
///  - `eventual_degree` b with `rule` h: f(d) = h(d) whenever degree(d) >= b.
///
/// Implementations may memoize internally; evaluation must stay pure.
#[derive(Clone)]
pub struct IntLatticeFunction {
	n: usize,
	eval: Arc<dyn Fn(&LatticePoint) -> i64 + Send + Sync>,
	initial_zero_degree: Option<i64>,
	eventual_degree: Option<i64>,
	rule: Option<ModularRule>,
}

impl IntLatticeFunction {
	pub fn new<F>(n: usize, eval: F) -> Self
	where
		F: Fn(&LatticePoint) -> i64 + Send + Sync + 'static,
	{
		assert!(n >= 1, "lattice functions need dimension n >= 1");
		IntLatticeFunction {
			n,
			eval: Arc::new(eval),
			initial_zero_degree: None,
			eventual_degree: None,
			rule: None,
		}
	}

	pub fn with_initial_zero(mut self, a: i64) -> Self {
		self.initial_zero_degree = Some(a);
		self
	}

	pub fn with_eventual(mut self, b: i64, rule: ModularRule) -> Self {
		self.eventual_degree = Some(b);
		self.rule = Some(rule);
		self
	}

	pub fn n(&self) -> usize {
		self.n
	}

	pub fn eval(&self, d: &LatticePoint) -> i64 {
		assert_eq!(d.n(), self.n, "dimension mismatch in eval");
		(self.eval)(d)
	}

	pub fn initial_zero_degree(&self) -> Option<i64> {
		self.initial_zero_degree
	}

	pub fn eventual_degree(&self) -> Option<i64> {
		self.eventual_degree
	}

	pub fn rule(&self) -> Option<&ModularRule> {
		self.rule.as_ref()
	}
}

impl fmt::Debug for IntLatticeFunction {
	fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
		f.debug_struct("IntLatticeFunction")
			.field("n", &self.n)
			.field("initial_zero_degree", &self.initial_zero_degree)
			.field("eventual_degree", &self.eventual_degree)
			.field("rule", &self.rule)
			.finish_non_exhaustive()
	}
}

/// Translation (t_i f)(d) = f(d - e_i); both metadata bounds grow by one and
/// a degree offset drops by one.
pub fn shift(f: &IntLatticeFunction, i: usize) -> IntLatticeFunction {
	let n = f.n();
	assert!((1..=n).contains(&i), "axis {i} out of range for n={n}");
	let e = LatticePoint::unit(n, i);
	let inner = f.clone();
	let mut out = IntLatticeFunction::new(n, move |d| inner.eval(&d.sub(&e)));
	if let Some(a) = f.initial_zero_degree {
		out = out.with_initial_zero(exact::add(a, 1));
	}
	if let (Some(b), Some(rule)) = (f.eventual_degree, f.rule.clone()) {
		let shifted = match rule {
			ModularRule::Offset(c) => ModularRule::Offset(exact::sub(c, 1)),
			ModularRule::Custom(h) => {
				let e = LatticePoint::unit(n, i);
				ModularRule::Custom(Arc::new(move |d: &LatticePoint| h(&d.sub(&e))))
			}
		};
		out = out.with_eventual(exact::add(b, 1), shifted);
	}
	out
}

/// Mobius operator m f (d) = ((1-t_1)...(1-t_n) f)(d), evaluated in the
/// factored form: axis by axis nested differences.
pub fn mobius_at(f: &IntLatticeFunction, d: &LatticePoint) -> i64 {
	assert_eq!(d.n(), f.n(), "dimension mismatch in mobius_at");
	fn diff_rec(f: &IntLatticeFunction, d: &mut LatticePoint, axis: usize) -> i64 {
		if axis == 0 {
			return f.eval(d);
		}
		let here = diff_rec(f, d, axis - 1);
		d.0[axis - 1] = exact::sub(d.0[axis - 1], 1);
		let below = diff_rec(f, d, axis - 1);
		d.0[axis - 1] = exact::add(d.0[axis - 1], 1);
		exact::sub(here, below)
	}
	diff_rec(f, &mut d.clone(), f.n())
}

/// True when the Mobius operator vanishes at every window point.
pub fn is_modular_on(f: &IntLatticeFunction, window: &Window) -> bool {
	assert_eq!(f.n(), window.n(), "dimension mismatch in is_modular_on");
	let mut ok = true;
	window.for_each_point(|p| {
		if ok && mobius_at(f, p) != 0 {
			ok = false;
		}
	});
	ok
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
	#[error("function declares no initial-zero degree; weight tables need one")]
	MissingInitialZero,
	#[error("window degree band starts at {band_start} but the function is only known zero up to degree {initial_zero}")]
	BandStartsTooHigh { band_start: i64, initial_zero: i64 },
	#[error("down-cone of {point} is not covered by the table window: {detail}")]
	WindowIncomplete { point: LatticePoint, detail: String },
}

/// Nonzero values of a weight W = m f on a window.
///
/// Construction guarantees W = 0 below the window's degree band, so the
/// table fully determines accumulation sums whose down-cone stays inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
	n: usize,
	window: Window,
	entries: BTreeMap<LatticePoint, i64>,
}

impl WeightTable {
	/// Builds a table from explicit entries; zero values are dropped and all
	/// points must lie inside the window.
	pub fn from_entries(
		window: Window,
		entries: impl IntoIterator<Item = (LatticePoint, i64)>,
	) -> Self {
		let n = window.n();
		let mut map = BTreeMap::new();
		for (p, w) in entries {
			assert!(
				window.contains(&p),
				"weight table entry {p} outside window"
			);
			if w != 0 {
				let prev = map.insert(p, w);
				assert!(prev.is_none(), "duplicate weight table entry");
			}
		}
		WeightTable {
			n,
			window,
			entries: map,
		}
	}

	pub fn n(&self) -> usize {
		self.n
	}

	pub fn window(&self) -> &Window {
		&self.window
	}

	/// Value at a window point (zero when no entry); None outside the window.
	pub fn lookup(&self, d: &LatticePoint) -> Option<i64> {
		if self.window.contains(d) {
			Some(self.entries.get(d).copied().unwrap_or(0))
		} else {
			None
		}
	}

	/// Support entries in the fixed window order.
	pub fn support(&self) -> Vec<(LatticePoint, i64)> {
		let mut items: Vec<_> = self.entries.iter().map(|(p, &w)| (p.clone(), w)).collect();
		items.sort_by(|a, b| window_order(&a.0, &b.0));
		items
	}

	pub fn len(&self) -> usize {
		self.entries.len()
	}

	pub fn is_empty(&self) -> bool {
		self.entries.is_empty()
	}

	/// Accumulation (s W)(d) = sum of W over {d' <= d}.
	///
	/// Errors unless every potentially nonzero point of the down-cone lies
	/// inside the window: deg(d) must not exceed the band, d must not exceed
	/// the box top, and the cone truncated at the band start must clear the
	/// box bottom.
	pub fn accumulate_at(&self, d: &LatticePoint) -> Result<i64, LatticeError> {
		assert_eq!(d.n(), self.n, "dimension mismatch in accumulate_at");
		let deg = d.degree();
		if deg < self.window.degree_min {
			// Whole cone is below the band, where W vanishes by construction.
			return Ok(0);
		}
		if deg > self.window.degree_max {
			return Err(LatticeError::WindowIncomplete {
				point: d.clone(),
				detail: format!(
					"degree {deg} exceeds the band top {}",
					self.window.degree_max
				),
			});
		}
		for (i, (&c, &h)) in d.0.iter().zip(&self.window.hi).enumerate() {
			if c > h {
				return Err(LatticeError::WindowIncomplete {
					point: d.clone(),
					detail: format!("coordinate {} exceeds the box top {h}", i + 1),
				});
			}
		}
		let slack = exact::sub(deg, self.window.degree_min);
		for (i, (&c, &l)) in d.0.iter().zip(&self.window.lo).enumerate() {
			if exact::sub(c, slack) < l {
				return Err(LatticeError::WindowIncomplete {
					point: d.clone(),
					detail: format!(
						"cone reaches coordinate {} below the box bottom {l}",
						i + 1
					),
				});
			}
		}
		Ok(exact::sum(
			self.entries
				.iter()
				.filter(|(p, _)| p.leq(d))
				.map(|(_, &w)| w),
		))
	}

	/// JSON document {"n":..,"window":..,"entries":[{"d":..,"w":..},..]}.
	pub fn to_json(&self) -> String {
		#[derive(Serialize)]
		struct Entry<'a> {
			d: &'a [i64],
			w: i64,
		}
		struct Entries<'a>(&'a WeightTable);
		impl Serialize for Entries<'_> {
			fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
				let items = self.0.support();
				let mut seq = s.serialize_seq(Some(items.len()))?;
				for (p, w) in &items {
					seq.serialize_element(&Entry {
						d: p.coords(),
						w: *w,
					})?;
				}
				seq.end()
			}
		}
		#[derive(Serialize)]
		struct Doc<'a> {
			n: usize,
			window: &'a Window,
			entries: Entries<'a>,
		}
		serde_json::to_string_pretty(&Doc {
			n: self.n,
			window: &self.window,
			entries: Entries(self),
		})
		.expect("weight table serializes")
	}

	/// CSV with header d_1,...,d_n,w in the fixed window order.
	pub fn to_csv(&self) -> String {
		let mut out = String::new();
		for i in 1..=self.n {
			out.push_str(&format!("d_{i},"));
		}
		out.push_str("w\n");
		for (p, w) in self.support() {
			for c in p.coords() {
				out.push_str(&format!("{c},"));
			}
			out.push_str(&format!("{w}\n"));
		}
		out
	}
}

/// The fixed window order: ascending degree, then lexicographic.
pub fn window_order(a: &LatticePoint, b: &LatticePoint) -> Ordering {
	a.degree().cmp(&b.degree()).then_with(|| a.cmp(b))
}

/// Tabulates the Mobius weight of an initially-zero function on a window.
pub fn weight_table(f: &IntLatticeFunction, window: &Window) -> Result<WeightTable, LatticeError> {
	assert_eq!(f.n(), window.n(), "dimension mismatch in weight_table");
	let a = f.initial_zero_degree().ok_or(LatticeError::MissingInitialZero)?;
	// The weight vanishes below degree a + 1, so bands may start there.
	if window.degree_min > a + 1 {
		return Err(LatticeError::BandStartsTooHigh {
			band_start: window.degree_min,
			initial_zero: a,
		});
	}
	let mut entries = Vec::new();
	window.for_each_point(|p| {
		let w = mobius_at(f, p);
		if w != 0 {
			entries.push((p.clone(), w));
		}
	});
	Ok(WeightTable::from_entries(window.clone(), entries))
}

/// Outcome of empirically probing a function for Riemann shape on a window:
/// zero up to degree `initial_zero`, equal to degree + `offset` from degree
/// `eventual` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
	Riemann {
		offset: i64,
		initial_zero: i64,
		eventual: i64,
	},
	Violation {
		point: LatticePoint,
		detail: String,
	},
}

impl ProbeOutcome {
	pub fn is_riemann(&self) -> bool {
		matches!(self, ProbeOutcome::Riemann { .. })
	}
}

/// Probes the degree slices of `window`. Certification needs the linear
/// regime to hold on at least the top two slices; failure reports a
/// violating point.
pub fn probe_riemann(f: &IntLatticeFunction, window: &Window) -> ProbeOutcome {
	assert_eq!(f.n(), window.n(), "dimension mismatch in probe_riemann");
	let dmin = window.degree_min.max(window.lo().degree());
	let dmax = window.degree_max.min(window.hi().degree());
	assert!(dmax >= dmin + 2, "probe window needs at least three degree slices");

	let slice = |deg: i64| {
		let w = Window::banded(window.lo(), window.hi(), deg, deg);
		w.points()
	};

	// Offset from the top slice; it must be internally consistent.
	let top = slice(dmax);
	let offset = exact::sub(f.eval(&top[0]), dmax);
	for p in &top[1..] {
		if f.eval(p) != exact::add(dmax, offset) {
			return ProbeOutcome::Violation {
				point: p.clone(),
				detail: format!(
					"top degree slice is not constant: expected {} here",
					exact::add(dmax, offset)
				),
			};
		}
	}

	// Largest all-zero prefix of degree slices.
	let mut initial_zero = dmin - 1;
	'zero: for deg in dmin..=dmax {
		for p in slice(deg) {
			if f.eval(&p) != 0 {
				break 'zero;
			}
		}
		initial_zero = deg;
	}

	// Smallest degree after which every slice matches degree + offset.
	let mut eventual = dmax;
	let mut witness: Option<LatticePoint> = None;
	for deg in (initial_zero + 1..dmax).rev() {
		let mut clean = true;
		for p in slice(deg) {
			if f.eval(&p) != exact::add(deg, offset) {
				if witness.is_none() {
					witness = Some(p.clone());
				}
				clean = false;
				break;
			}
		}
		if clean {
			eventual = deg;
		} else {
			break;
		}
	}

	if eventual >= dmax {
		let point = witness.unwrap_or_else(|| top[0].clone());
		return ProbeOutcome::Violation {
			point,
			detail: "no two-slice linear regime at the top of the window".into(),
		};
	}
	ProbeOutcome::Riemann {
		offset,
		initial_zero,
		eventual,
	}
}
