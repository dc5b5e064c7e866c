#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use riemann_weights::{IntLatticeFunction, LatticePoint, Multigraph, Window};

pub fn pt(coords: &[i64]) -> LatticePoint {
	LatticePoint::new(coords.to_vec())
}

pub fn random_divisor<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> LatticePoint {
	pt(&(0..n).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>())
}

/// Connected multigraph on 2..=max_v vertices: a random spanning tree with
/// multiplicities 1..=3 plus a few extra parallel edges.
pub fn random_connected_multigraph<R: Rng>(rng: &mut R, max_v: usize) -> Multigraph {
	let v = rng.gen_range(2..=max_v);
	let mut mult = vec![vec![0i64; v]; v];
	for child in 1..v {
		let parent = rng.gen_range(0..child);
		let m = rng.gen_range(1..=3);
		mult[child][parent] += m;
		mult[parent][child] += m;
	}
	for _ in 0..rng.gen_range(0..=v) {
		let a = rng.gen_range(0..v);
		let b = rng.gen_range(0..v);
		if a != b {
			mult[a][b] += 1;
			mult[b][a] += 1;
		}
	}
	Multigraph::new(mult).expect("spanning tree keeps the graph connected")
}

/// Random integer function vanishing at degrees below the window band,
/// materialized on the window and zero elsewhere.
pub fn random_initially_zero<R: Rng>(rng: &mut R, window: &Window) -> IntLatticeFunction {
	let mut values = HashMap::new();
	window.for_each_point(|p| {
		values.insert(p.clone(), rng.gen_range(-3..=3));
	});
	let values = Arc::new(values);
	IntLatticeFunction::new(window.n(), move |d| values.get(d).copied().unwrap_or(0))
		.with_initial_zero(window.degree_min() - 1)
}
