//! One function per subcommand.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use riemann_weights::complete::double_diff_indicator;
use riemann_weights::{
	audit_dual_weight, check_dual_weight_identity, coord_extend, dual_function, find_self_duality,
	kn_rank, kn_weight, rank_fn, weight_table, BCoord, DomainFunction, DomainSpec, ExtendError,
	IdentityReport, IntLatticeFunction, LatticePoint, Multigraph, RiemannFunction, StripExtension,
	WeightTable, Window,
};

use crate::source::{parse_divisor, SourceArgs, SourceKind, WindowArgs};
use crate::{CmdResult, Failure};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
	Json,
	Csv,
}

impl Format {
	fn ext(self) -> &'static str {
		match self {
			Format::Json => "json",
			Format::Csv => "csv",
		}
	}

	fn render(self, table: &WeightTable) -> String {
		match self {
			Format::Json => {
				let mut text = table.to_json();
				text.push('\n');
				text
			}
			Format::Csv => table.to_csv(),
		}
	}
}

fn write_output(path: &Path, text: &str) -> CmdResult {
	std::fs::write(path, text)
		.map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

// ---------------------------------------------------------------- rank

#[derive(Args)]
pub struct RankArgs {
	#[command(flatten)]
	pub source: SourceArgs,
	/// Divisor coordinates, comma-separated
	#[arg(long, value_name = "D1,..,DN", allow_hyphen_values = true)]
	pub divisor: String,
	/// Cross-check the result along an independent path
	#[arg(long)]
	pub verify: bool,
}

pub fn rank(args: &RankArgs) -> CmdResult {
	let (g, kind) = args.source.load()?;
	let d = parse_divisor(&args.divisor, g.n())?;
	let value = if let SourceKind::Complete(n) = kind {
		let fast = kn_rank(n, &d);
		if args.verify {
			let slow = g.bn_rank(&d);
			if fast != slow {
				return Err(Failure::Verification(format!(
					"closed form gives {fast} but the engine gives {slow} at {d}"
				)));
			}
		}
		fast
	} else {
		let r = g.bn_rank(&d);
		if args.verify && !g.check_riemann_roch(&d) {
			return Err(Failure::Verification(format!(
				"rank {r} fails the Riemann-Roch cross-check at {d}"
			)));
		}
		r
	};
	println!("{value}");
	Ok(())
}

// ------------------------------------------------------------- rank-kn

#[derive(Args)]
pub struct RankKnArgs {
	/// Number of vertices
	#[arg(long)]
	pub n: usize,
	/// Divisor coordinates, comma-separated
	#[arg(long, value_name = "D1,..,DN", allow_hyphen_values = true)]
	pub divisor: String,
}

pub fn rank_kn(args: &RankKnArgs) -> CmdResult {
	if args.n < 2 {
		return Err(Failure::Usage("--n must be at least 2".into()));
	}
	let d = parse_divisor(&args.divisor, args.n)?;
	println!("{}", kn_rank(args.n, &d));
	Ok(())
}

// ------------------------------------------------------------- weights

#[derive(Args)]
pub struct WeightsArgs {
	#[command(flatten)]
	pub source: SourceArgs,
	#[command(flatten)]
	pub window: WindowArgs,
	#[arg(long, value_enum, default_value = "json")]
	pub format: Format,
	/// Output file (default: stdout)
	#[arg(long, value_name = "FILE")]
	pub out: Option<PathBuf>,
}

fn closed_sibling(path: &Path, format: Format) -> PathBuf {
	let stem = path
		.file_stem()
		.map(|s| s.to_string_lossy().into_owned())
		.unwrap_or_default();
	let ext = path
		.extension()
		.map(|e| e.to_string_lossy().into_owned())
		.unwrap_or_else(|| format.ext().to_string());
	path.with_file_name(format!("{stem}.closed.{ext}"))
}

pub fn weights(args: &WeightsArgs) -> CmdResult {
	let (g, kind) = args.source.load()?;
	let g = Arc::new(g);
	let window = args.window.required(g.n())?;
	let f = rank_fn(&g);
	let table = weight_table(&f, &window)
		.map_err(|e| Failure::Usage(format!("window rejected: {e}")))?;
	let rendered = args.format.render(&table);
	match &args.out {
		Some(path) => write_output(path, &rendered)?,
		None => print!("{rendered}"),
	}
	if let SourceKind::Complete(n) = kind {
		let mut entries = Vec::new();
		window.for_each_point(|p| {
			let w = kn_weight(n, p);
			if w != 0 {
				entries.push((p.clone(), w));
			}
		});
		let closed = WeightTable::from_entries(window.clone(), entries);
		if let Some(path) = &args.out {
			write_output(&closed_sibling(path, args.format), &args.format.render(&closed))?;
		}
		if closed.support() != table.support() {
			return Err(Failure::Verification(
				"engine and closed-form weight tables disagree".into(),
			));
		}
	}
	Ok(())
}

// ---------------------------------------------------------- weights-kn

#[derive(Args)]
pub struct WeightsKnArgs {
	/// Number of vertices
	#[arg(long)]
	pub n: usize,
	/// Largest class degree to tabulate
	#[arg(long, allow_hyphen_values = true)]
	pub max_degree: i64,
	#[arg(long, value_enum, default_value = "json")]
	pub format: Format,
	/// Output file (default: stdout)
	#[arg(long, value_name = "FILE")]
	pub out: Option<PathBuf>,
}

pub fn weights_kn(args: &WeightsKnArgs) -> CmdResult {
	if args.n < 2 {
		return Err(Failure::Usage("--n must be at least 2".into()));
	}
	if args.max_degree < 0 {
		return Err(Failure::Usage("--max-degree must be >= 0".into()));
	}
	let n = args.n;
	// One canonical representative (0,..,0,i) per class <0, i>.
	let mut entries = Vec::new();
	let mut top = 0;
	for i in 0..=args.max_degree {
		let point = riemann_weights::from_b_coord(&BCoord::new(n, vec![0; n - 2], i));
		let w = kn_weight(n, &point);
		if w != 0 {
			top = top.max(i);
			entries.push((point, w));
		}
	}
	let lo = LatticePoint::new(vec![0; n]);
	let mut hi = vec![0; n];
	hi[n - 1] = top;
	let window = Window::banded(lo, LatticePoint::new(hi), 0, args.max_degree);
	let table = WeightTable::from_entries(window, entries);
	let rendered = args.format.render(&table);
	match &args.out {
		Some(path) => write_output(path, &rendered),
		None => {
			print!("{rendered}");
			Ok(())
		}
	}
}

// ------------------------------------------------------------- figure1

#[derive(Args)]
pub struct Figure1Args {
	/// Number of vertices
	#[arg(long, default_value_t = 4)]
	pub n: usize,
}

/// Indicator tables over the residue grid, one table per degree i.
///
/// With two or more residues the first two span rows and columns and the
/// rest stay 0; with a single residue each table is one row.
pub fn render_figure1(n: usize) -> String {
	let nn = n as i64;
	let grid = n >= 4;
	let i_max = if grid { 2 * (nn - 1) } else { nn - 1 };
	let mut out = String::new();
	for i in 0..=i_max {
		if i > 0 {
			out.push('\n');
		}
		out.push_str(&format!("i={i}\n"));
		let rows = if grid { nn } else { 1 };
		for b1 in 0..rows {
			let cells: Vec<String> = (0..nn)
				.map(|b2| {
					let mut b = vec![0i64; n - 2];
					if grid {
						b[0] = b1;
						b[1] = b2;
					} else {
						b[0] = b2;
					}
					double_diff_indicator(&BCoord::new(n, b, i)).to_string()
				})
				.collect();
			out.push_str(&cells.join(" "));
			out.push('\n');
		}
	}
	out
}

pub fn figure1(args: &Figure1Args) -> CmdResult {
	if args.n < 3 {
		return Err(Failure::Usage("--n must be at least 3".into()));
	}
	print!("{}", render_figure1(args.n));
	Ok(())
}

// ------------------------------------------------------- check-duality

#[derive(Args)]
pub struct CheckDualityArgs {
	#[command(flatten)]
	pub source: SourceArgs,
	/// Base point of the duality (default: the canonical divisor)
	#[arg(long, value_name = "K1,..,KN", allow_hyphen_values = true)]
	pub k: Option<String>,
	#[command(flatten)]
	pub window: WindowArgs,
	/// Corrupt the dual before auditing, to demonstrate a failing report
	#[arg(long)]
	pub fault_inject: bool,
}

#[derive(Serialize)]
struct SelfDuality {
	l: Option<LatticePoint>,
	expected: LatticePoint,
	matches_expected_class: Option<bool>,
}

#[derive(Serialize)]
struct DualityOutput {
	#[serde(flatten)]
	report: IdentityReport,
	self_duality: SelfDuality,
}

/// A window guaranteed to contain the full weight support of the source.
fn support_window(g: &Multigraph, kind: SourceKind) -> Window {
	let n = g.n();
	match kind {
		SourceKind::Complete(v) => {
			let vv = v as i64;
			let mut hi = vec![vv - 1; n];
			hi[n - 1] = vv * (vv - 2) + 1;
			Window::banded(
				LatticePoint::new(vec![-1; n]),
				LatticePoint::new(hi),
				-1,
				vv * (vv - 2),
			)
		}
		SourceKind::Dipole(r) => Window::banded(
			LatticePoint::new(vec![-1, -1]),
			LatticePoint::new(vec![r, 2 * r]),
			-1,
			2 * r,
		),
		SourceKind::File => {
			let deg_l = (2 * g.edge_count() - n as i64).max(0);
			Window::banded(
				LatticePoint::new(vec![-2; n]),
				LatticePoint::new(vec![deg_l + 2; n]),
				-1,
				deg_l,
			)
		}
	}
}

pub fn check_duality(args: &CheckDualityArgs) -> CmdResult {
	let (g, kind) = args.source.load()?;
	let g = Arc::new(g);
	let n = g.n();
	let f = RiemannFunction::new(rank_fn(&g)).expect("graph ranks carry full metadata");
	let k = match &args.k {
		Some(text) => parse_divisor(text, n)?,
		None => g.canonical_divisor(),
	};
	let genus = g.genus();
	let window = match args.window.explicit(n)? {
		Some(w) => w,
		None => Window::symmetric(
			n,
			3,
			(k.degree() - 2 * genus + 1).min(-1),
			(k.degree() + 2).max(1),
		),
	};
	let report = if args.fault_inject {
		let points = window.points();
		let bump = points
			.first()
			.cloned()
			.ok_or_else(|| Failure::Usage("the audit window is empty".into()))?;
		let base = dual_function(&f, &k).base().clone();
		let candidate =
			IntLatticeFunction::new(n, move |d| base.eval(d) + i64::from(*d == bump));
		audit_dual_weight(&candidate, &f, &k, &window)
	} else {
		check_dual_weight_identity(&f, &k, &window)
	};

	let table = weight_table(f.base(), &support_window(&g, kind))
		.expect("support windows start below the weight band");
	let found = find_self_duality(&table);
	let expected = g.canonical_divisor().add(&LatticePoint::ones(n));
	let matches = found.as_ref().map(|l| g.is_equivalent(l, &expected));

	let output = DualityOutput {
		report,
		self_duality: SelfDuality {
			l: found,
			expected,
			matches_expected_class: matches,
		},
	};
	println!("{}", serde_json::to_string_pretty(&output).expect("report serializes"));
	if !output.report.holds {
		return Err(Failure::Verification("the dual-weight transport audit failed".into()));
	}
	Ok(())
}

// -------------------------------------------------------------- extend

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExtendMode {
	Coord,
	Strip,
}

#[derive(Args)]
pub struct ExtendArgs {
	/// Fundamental domain shape
	#[arg(long, value_enum)]
	pub mode: ExtendMode,
	/// Dimension
	#[arg(long)]
	pub n: usize,
	/// Strip band start (strip mode only; default 0)
	#[arg(long, allow_hyphen_values = true)]
	pub a: Option<i64>,
	/// JSON list of {"d": [..], "v": ..} domain samples
	#[arg(long, value_name = "FILE")]
	pub input: PathBuf,
	/// Evaluation point, comma-separated
	#[arg(long, value_name = "D1,..,DN", allow_hyphen_values = true)]
	pub eval: String,
}

#[derive(Deserialize)]
struct Sample {
	d: Vec<i64>,
	v: i64,
}

pub fn extend(args: &ExtendArgs) -> CmdResult {
	if args.n == 0 {
		return Err(Failure::Usage("--n must be at least 1".into()));
	}
	if args.mode == ExtendMode::Coord && args.a.is_some() {
		return Err(Failure::Usage("--a applies only to --mode strip".into()));
	}
	let n = args.n;
	let make_spec = || match args.mode {
		ExtendMode::Coord => DomainSpec::coordinate_axes(n),
		ExtendMode::Strip => DomainSpec::strip(n, args.a.unwrap_or(0)),
	};
	let at = parse_divisor(&args.eval, n)?;
	let text = std::fs::read_to_string(&args.input)
		.map_err(|e| Failure::Usage(format!("cannot read {}: {e}", args.input.display())))?;
	let samples: Vec<Sample> = serde_json::from_str(&text)
		.map_err(|e| Failure::Usage(format!("bad input {}: {e}", args.input.display())))?;

	let spec = make_spec();
	let mut values: HashMap<Vec<i64>, i64> = HashMap::new();
	for sample in samples {
		if sample.d.len() != n {
			return Err(Failure::Usage(format!(
				"input point {:?} has {} coordinates but needs {n}",
				sample.d,
				sample.d.len()
			)));
		}
		let p = LatticePoint::new(sample.d);
		if !spec.contains(&p) {
			return Err(Failure::Usage(format!("input point {p} is off the domain")));
		}
		if let Some(prev) = values.insert(p.coords().to_vec(), sample.v) {
			if prev != sample.v {
				return Err(Failure::Usage(format!("conflicting input values at {p}")));
			}
		}
	}

	let missing: Arc<Mutex<Option<LatticePoint>>> = Arc::new(Mutex::new(None));
	let seen = Arc::clone(&missing);
	let source = DomainFunction::new(make_spec(), move |d: &LatticePoint| {
		values.get(d.coords()).copied().unwrap_or_else(|| {
			let mut slot = seen.lock().unwrap();
			if slot.is_none() {
				*slot = Some(d.clone());
			}
			0
		})
	});

	let value = match args.mode {
		ExtendMode::Coord => coord_extend(&source, &at),
		ExtendMode::Strip => match StripExtension::new(source).eval(&at) {
			Ok(v) => v,
			Err(err @ ExtendError::BudgetExceeded { .. }) => {
				return Err(Failure::Resource(err.to_string()))
			}
			Err(err) => return Err(Failure::Usage(err.to_string())),
		},
	};
	if let Some(p) = missing.lock().unwrap().take() {
		return Err(Failure::Usage(format!("input is missing the domain point {p}")));
	}
	println!("{value}");
	Ok(())
}

// ------------------------------------------------------------ bench-kn

#[derive(Args)]
pub struct BenchKnArgs {
	/// Comma-separated vertex counts; scientific forms like 1e6 accepted
	#[arg(long, default_value = "1e3,1e4,1e5,1e6")]
	pub sizes: String,
	/// Measured calls per size
	#[arg(long, default_value_t = 3)]
	pub trials: usize,
	/// Divisor-sampling seed
	#[arg(long, default_value_t = 7)]
	pub seed: u64,
}

fn parse_size(token: &str) -> Result<usize, Failure> {
	let bad = || Failure::Usage(format!("bad size {token:?}"));
	let value = if token.contains(['e', 'E']) {
		let f: f64 = token.parse().map_err(|_| bad())?;
		if !f.is_finite() || !(0.0..=1e15).contains(&f) {
			return Err(bad());
		}
		f.round() as usize
	} else {
		token.parse().map_err(|_| bad())?
	};
	if value < 2 {
		return Err(Failure::Usage(format!("size {token:?} is below the minimum of 2")));
	}
	Ok(value)
}

pub fn bench_kn(args: &BenchKnArgs) -> CmdResult {
	if args.trials == 0 {
		return Err(Failure::Usage("--trials must be at least 1".into()));
	}
	let mut sizes = args
		.sizes
		.split(',')
		.map(|t| parse_size(t.trim()))
		.collect::<Result<Vec<_>, _>>()?;
	sizes.sort_unstable();
	sizes.dedup();
	if sizes.is_empty() {
		return Err(Failure::Usage("--sizes must name at least one size".into()));
	}

	println!("seed {}", args.seed);
	println!("size mean_ns");
	let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
	let mut means: Vec<(usize, u128)> = Vec::new();
	for &size in &sizes {
		let bound = size as i64;
		let warm = LatticePoint::new(
			(0..size).map(|_| rng.gen_range(-bound..=bound)).collect(),
		);
		std::hint::black_box(kn_rank(size, std::hint::black_box(&warm)));
		let mut total: u128 = 0;
		for _ in 0..args.trials {
			let d = LatticePoint::new(
				(0..size).map(|_| rng.gen_range(-bound..=bound)).collect(),
			);
			let start = Instant::now();
			std::hint::black_box(kn_rank(size, std::hint::black_box(&d)));
			total += start.elapsed().as_nanos();
		}
		let mean = total / args.trials as u128;
		println!("{size} {mean}");
		means.push((size, mean));
	}

	if let [.., (s1, t1), (s2, t2)] = means.as_slice() {
		// Normalize the largest-pair ratio to a per-doubling growth factor,
		// so ten-fold size steps gate the same linearity as two-fold ones.
		let doublings = (*s2 as f64 / *s1 as f64).log2();
		let ratio = (*t2 as f64 / (*t1).max(1) as f64).powf(1.0 / doublings);
		println!("doubling_ratio {ratio:.3}");
		if ratio.is_nan() || ratio >= 3.0 {
			return Err(Failure::Verification(format!(
				"doubling ratio {ratio:.3} is not linear-like (< 3 required)"
			)));
		}
	}
	Ok(())
}
