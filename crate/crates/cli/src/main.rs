//! Command-line front end for the rank, weight, duality, and extension
//! machinery in the `riemann-weights` library.

mod cmds;
mod source;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

/// A failed run, bucketed by exit code.
#[derive(Debug)]
pub enum Failure {
	/// Exit 1: bad flags, unreadable files, malformed or incomplete input.
	Usage(String),
	/// Exit 2: a requested cross-check or identity audit did not hold.
	Verification(String),
	/// Exit 3: a computation exceeded its resource budget.
	Resource(String),
}

impl Failure {
	fn code(&self) -> u8 {
		match self {
			Failure::Usage(_) => 1,
			Failure::Verification(_) => 2,
			Failure::Resource(_) => 3,
		}
	}

	fn message(&self) -> &str {
		match self {
			Failure::Usage(m) | Failure::Verification(m) | Failure::Resource(m) => m,
		}
	}
}

pub type CmdResult = Result<(), Failure>;

#[derive(Parser)]
#[command(name = "rrw", version, about = "Divisor ranks and their difference-operator weights")]
struct Cli {
	#[command(subcommand)]
	command: Command,
}

#[derive(Subcommand)]
enum Command {
	/// Rank of a divisor on a graph
	Rank(cmds::RankArgs),
	/// Rank on a complete graph via the closed form
	RankKn(cmds::RankKnArgs),
	/// Weight table of a graph's rank function
	Weights(cmds::WeightsArgs),
	/// Closed-form complete-graph weight table up to a degree cap
	WeightsKn(cmds::WeightsKnArgs),
	/// Indicator tables of the double difference over the residue grid
	Figure1(cmds::Figure1Args),
	/// Audit the dual-weight transport identity and report self-duality
	CheckDuality(cmds::CheckDualityArgs),
	/// Extend values on a fundamental domain to all of Z^n
	Extend(cmds::ExtendArgs),
	/// Time the linear-path rank on growing complete graphs
	BenchKn(cmds::BenchKnArgs),
}

fn main() -> ExitCode {
	let cli = match Cli::try_parse() {
		Ok(cli) => cli,
		Err(err) => {
			let code = match err.kind() {
				ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
				_ => 1,
			};
			let _ = err.print();
			return ExitCode::from(code);
		}
	};
	let result = match &cli.command {
		Command::Rank(args) => cmds::rank(args),
		Command::RankKn(args) => cmds::rank_kn(args),
		Command::Weights(args) => cmds::weights(args),
		Command::WeightsKn(args) => cmds::weights_kn(args),
		Command::Figure1(args) => cmds::figure1(args),
		Command::CheckDuality(args) => cmds::check_duality(args),
		Command::Extend(args) => cmds::extend(args),
		Command::BenchKn(args) => cmds::bench_kn(args),
	};
	match result {
		Ok(()) => ExitCode::SUCCESS,
		Err(failure) => {
			eprintln!("error: {}", failure.message());
			ExitCode::from(failure.code())
		}
	}
}
