//! Integer-valued functions on Z^n that vanish at low degree and obey a
//! modular rule at high degree, together with the structures built from
//! them: alternating difference and accumulation operators, weight tables
//! on finite windows, divisor ranks of multigraphs via chip-firing,
//! closed forms for complete graphs, duality transports of functions and
//! weights, and extension of fundamental-domain data to modular functions.
//!
//! All arithmetic is exact: computations run in checked `i64` and abort on
//! overflow rather than wrapping or saturating.

pub mod complete;
pub mod exact;
pub mod graphs;
pub mod lattice;
pub mod modular;
pub mod riemann;

pub use complete::{
	from_b_coord, kn_rank, kn_rank_fn, kn_weight, pic_add, pic_sub, to_a_rep, to_b_coord, ARep,
	BCoord,
};
pub use graphs::{rank_fn, GraphError, Multigraph};
pub use lattice::{
	e_indicator, is_modular_on, mobius_at, probe_riemann, weight_table, window_order,
	IntLatticeFunction, LatticeError, LatticePoint, ModularRule, ProbeOutcome, WeightTable,
	Window,
};
pub use modular::{
	coord_decompose, coord_extend, shell_domain, verify_cubism, CubismExtension, CubismReport,
	DomainFunction, DomainSpec, ExtendError, StripExtension,
};
pub use riemann::{
	audit_dual_weight, check_dual_weight_identity, dual_function, dual_weight, extract_matching,
	find_self_duality, is_periodic, is_slowly_growing, restrict, IdentityReport,
	MatchingPermutation, RiemannError, RiemannFunction,
};
