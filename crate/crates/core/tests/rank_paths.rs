mod common;

use std::sync::Arc;

use common::{pt, random_connected_multigraph, random_divisor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riemann_weights::{
	is_periodic, is_slowly_growing, kn_rank, kn_rank_fn, probe_riemann, rank_fn, Multigraph,
	ProbeOutcome, Window,
};

const IRREGULAR: &str = "\
n 4
1 2 2   # doubled edge
1 3 1
2 3 1
2 4 3
3 4 1
";

#[test]
fn closed_form_rank_matches_the_chip_firing_engine() {
	let mut rng = ChaCha8Rng::seed_from_u64(40_001);
	for n in 2..=6usize {
		let g = Multigraph::complete(n);
		for _ in 0..40 {
			let d = random_divisor(&mut rng, n, -5, 5);
			assert_eq!(kn_rank(n, &d), g.bn_rank(&d), "n={n} at {d}");
		}
	}
}

#[test]
fn closed_form_rank_function_agrees_pointwise() {
	let f = kn_rank_fn(4);
	let g = Arc::new(Multigraph::complete(4));
	let engine = rank_fn(&g);
	Window::symmetric(4, 2, -4, 9).for_each_point(|d| {
		assert_eq!(f.eval(d), engine.eval(d), "at {d}");
	});
}

#[test]
fn riemann_roch_holds_on_random_divisors() {
	let mut rng = ChaCha8Rng::seed_from_u64(1234);
	let graphs = vec![
		Multigraph::complete(3),
		Multigraph::complete(4),
		Multigraph::complete(5),
		Multigraph::dipole(1),
		Multigraph::dipole(3),
		Multigraph::dipole(5),
		Multigraph::parse(IRREGULAR).unwrap(),
	];
	for g in &graphs {
		for _ in 0..50 {
			let d = random_divisor(&mut rng, g.n(), -4, 4);
			assert!(g.check_riemann_roch(&d), "{g:?} at {d}");
		}
	}
}

#[test]
fn riemann_roch_holds_on_random_graphs() {
	let mut rng = ChaCha8Rng::seed_from_u64(77_000);
	for _ in 0..12 {
		let g = random_connected_multigraph(&mut rng, 6);
		for _ in 0..10 {
			let d = random_divisor(&mut rng, g.n(), -4, 4);
			assert!(g.check_riemann_roch(&d), "{g:?} at {d}");
			assert!(g.is_equivalent(&g.q_reduce(&d), &d));
		}
	}
}

#[test]
fn parsed_fixture_has_the_expected_shape() {
	let g = Multigraph::parse(IRREGULAR).unwrap();
	assert_eq!(g.n(), 4);
	assert_eq!(g.edge_count(), 8);
	assert_eq!(g.genus(), 5);
	assert_eq!(g.canonical_divisor(), pt(&[1, 4, 1, 2]));
	assert_eq!(g.multiplicity(2, 4), 3);
	assert_eq!(g.multiplicity(4, 2), 3);
	assert_eq!(g.multiplicity(1, 4), 0);
	assert!(Multigraph::parse("n 4\n1 5 2\n").is_err());
	assert!(Multigraph::parse("4\n1 2 1\n").is_err());
}

#[test]
fn rank_functions_probe_as_riemann_functions() {
	let zoo: Vec<Arc<Multigraph>> = vec![
		Arc::new(Multigraph::complete(3)),
		Arc::new(Multigraph::complete(4)),
		Arc::new(Multigraph::dipole(2)),
		Arc::new(Multigraph::dipole(3)),
	];
	for g in zoo {
		let f = rank_fn(&g);
		let genus = g.genus();
		let window = Window::symmetric(g.n(), 3, -3, 2 * genus + 1);
		match probe_riemann(&f, &window) {
			ProbeOutcome::Riemann {
				offset,
				initial_zero,
				eventual,
			} => {
				assert_eq!(offset, 1 - genus, "graph with {} vertices", g.n());
				assert_eq!(initial_zero, -1);
				assert_eq!(eventual, 2 * genus - 1);
			}
			ProbeOutcome::Violation { point, detail } => {
				panic!("graph with {} vertices violates at {point}: {detail}", g.n())
			}
		}
	}
}

#[test]
fn ranks_grow_slowly_and_repeat_along_principal_translates() {
	for n in [3usize, 4] {
		let g = Arc::new(Multigraph::complete(n));
		let f = rank_fn(&g);
		let window = Window::symmetric(n, 2, -2, 4);
		assert!(is_slowly_growing(&f, &window));
		assert!(is_periodic(&f, n as i64, &window));
		assert!(!is_periodic(&f, 1, &window));
	}
	for r in [2i64, 3] {
		let g = Arc::new(Multigraph::dipole(r));
		let f = rank_fn(&g);
		let window = Window::symmetric(2, 4, -4, 5);
		assert!(is_slowly_growing(&f, &window));
		assert!(is_periodic(&f, r, &window));
		assert!(!is_periodic(&f, r - 1, &window));
	}
}

#[test]
fn picard_representatives_are_reduced_and_counted() {
	let k3 = Multigraph::complete(3);
	let reps = k3.pic_representatives(1);
	assert_eq!(reps.len(), 3);
	assert!(reps.iter().all(|d| k3.is_winnable(d)));

	let k4 = Multigraph::complete(4);
	let reps = k4.pic_representatives(1);
	assert_eq!(reps.len(), 16);
	assert_eq!(reps.iter().filter(|d| k4.is_winnable(d)).count(), 4);
	for d in &reps {
		assert_eq!(d.degree(), 1);
		assert_eq!(&k4.q_reduce(d), d);
	}

	let dip = Multigraph::dipole(3);
	assert_eq!(dip.pic_representatives(0).len(), 3);
}

#[test]
fn bucketed_and_direct_closed_forms_agree_at_scale() {
	let mut rng = ChaCha8Rng::seed_from_u64(909);
	for _ in 0..200 {
		let n = rng.gen_range(2..=12);
		let d = random_divisor(&mut rng, n, -9, 9);
		assert_eq!(kn_rank(n, &d), riemann_weights::complete::kn_rank_direct(n, &d), "at {d}");
	}
}
