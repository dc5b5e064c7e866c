//! Shared flag groups: graph sources, window bounds, point parsing.

use std::path::PathBuf;

use clap::Args;
use riemann_weights::{LatticePoint, Multigraph, Window};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
	File,
	Complete(usize),
	Dipole(i64),
}

/// Mutually exclusive graph sources.
#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
	/// Graph file: header "n <count>", then "u v m" edge lines
	#[arg(long, value_name = "FILE")]
	pub graph: Option<PathBuf>,
	/// Complete graph on N vertices
	#[arg(long, value_name = "N")]
	pub complete: Option<usize>,
	/// Two-vertex graph with R parallel edges
	#[arg(long, value_name = "R")]
	pub dipole: Option<i64>,
}

impl SourceArgs {
	pub fn load(&self) -> Result<(Multigraph, SourceKind), Failure> {
		if let Some(path) = &self.graph {
			let text = std::fs::read_to_string(path).map_err(|e| {
				Failure::Usage(format!("cannot read {}: {e}", path.display()))
			})?;
			let g = Multigraph::parse(&text)
				.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
			return Ok((g, SourceKind::File));
		}
		if let Some(n) = self.complete {
			if n < 2 {
				return Err(Failure::Usage("--complete needs N >= 2".into()));
			}
			return Ok((Multigraph::complete(n), SourceKind::Complete(n)));
		}
		let r = self.dipole.expect("clap enforces one source");
		if r < 1 {
			return Err(Failure::Usage("--dipole needs R >= 1".into()));
		}
		Ok((Multigraph::dipole(r), SourceKind::Dipole(r)))
	}
}

/// Optional box-and-band window bounds.
#[derive(Args)]
pub struct WindowArgs {
	/// Window lower corner, comma-separated
	#[arg(long, value_name = "C1,..,CN", allow_hyphen_values = true)]
	pub lo: Option<String>,
	/// Window upper corner, comma-separated
	#[arg(long, value_name = "C1,..,CN", allow_hyphen_values = true)]
	pub hi: Option<String>,
	/// Lower degree bound (default: degree of --lo)
	#[arg(long, allow_hyphen_values = true)]
	pub deg_min: Option<i64>,
	/// Upper degree bound (default: degree of --hi)
	#[arg(long, allow_hyphen_values = true)]
	pub deg_max: Option<i64>,
}

impl WindowArgs {
	/// The window the flags describe, or None when no box was given.
	pub fn explicit(&self, n: usize) -> Result<Option<Window>, Failure> {
		let (lo, hi) = match (&self.lo, &self.hi) {
			(Some(lo), Some(hi)) => (parse_point_named(lo, n, "--lo")?, parse_point_named(hi, n, "--hi")?),
			(None, None) => {
				if self.deg_min.is_some() || self.deg_max.is_some() {
					return Err(Failure::Usage(
						"--deg-min/--deg-max need --lo and --hi".into(),
					));
				}
				return Ok(None);
			}
			_ => return Err(Failure::Usage("--lo and --hi must be given together".into())),
		};
		if !lo.leq(&hi) {
			return Err(Failure::Usage("--lo must be <= --hi componentwise".into()));
		}
		let deg_min = self.deg_min.unwrap_or_else(|| lo.degree());
		let deg_max = self.deg_max.unwrap_or_else(|| hi.degree());
		Ok(Some(Window::banded(lo, hi, deg_min, deg_max)))
	}

	pub fn required(&self, n: usize) -> Result<Window, Failure> {
		self.explicit(n)?
			.ok_or_else(|| Failure::Usage("this command needs --lo and --hi".into()))
	}
}

pub fn parse_coords(text: &str) -> Result<Vec<i64>, Failure> {
	text.split(',')
		.map(|tok| {
			tok.trim()
				.parse::<i64>()
				.map_err(|_| Failure::Usage(format!("bad integer {tok:?} in {text:?}")))
		})
		.collect()
}

pub fn parse_point(text: &str) -> Result<LatticePoint, Failure> {
	Ok(LatticePoint::new(parse_coords(text)?))
}

fn parse_point_named(text: &str, n: usize, flag: &str) -> Result<LatticePoint, Failure> {
	let p = parse_point(text)?;
	if p.n() != n {
		return Err(Failure::Usage(format!(
			"{flag} has {} coordinates but the graph has {n} vertices",
			p.n()
		)));
	}
	Ok(p)
}

pub fn parse_divisor(text: &str, n: usize) -> Result<LatticePoint, Failure> {
	let p = parse_point(text)?;
	if p.n() != n {
		return Err(Failure::Usage(format!(
			"divisor has {} coordinates but needs {n}",
			p.n()
		)));
	}
	Ok(p)
}
