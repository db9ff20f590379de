//! Independent cross-checks of the elimination-based counts.
//!
//! deg σ(r) is read off the Hilbert function of many sampled points of
//! σ(r) over a prime field: for large k, h(k+1) - 2h(k) + h(k-1) equals the
//! degree of the surface. The probe itself counts points on a random plane.

use hyperlines::catalog::{build_family, monomials};
use hyperlines::exactcore::matrix::field_rank;
use hyperlines::exactcore::{Field, Fp, PRIME_A};
use hyperlines::probes::{sigma_degree, sigma_points_mod};
use hyperlines::solve::Arith;

type Fa = Fp<PRIME_A>;

fn hilbert(points: &[Vec<Fa>], k: u32) -> usize {
    let monos = monomials(5, k);
    let rows: Vec<Vec<Fa>> = points
        .iter()
        .map(|p| monos.iter().map(|e| (0..5).fold(Fa::one(), |acc, i| acc.times(&p[i].pow(e[i] as u64)))).collect())
        .collect();
    field_rank(rows, monos.len())
}

fn surface_degree(name: &str, seed: u64, k: u32) -> (usize, usize) {
    let spec = build_family(name, seed).unwrap();
    let r = &spec.known_lines[0];
    let needed = 2 * monomials(5, k + 1).len();
    let pts = sigma_points_mod(&spec.implicit_eq, r, needed, k as usize + 3, 2000, seed).unwrap();
    assert!(pts.len() >= needed, "only {} points", pts.len());
    let h: Vec<usize> = (k - 1..=k + 1).map(|j| hilbert(&pts, j)).collect();
    let second = h[2] + h[0] - 2 * h[1];
    let probe = sigma_degree(&spec.implicit_eq, r, seed, Arith::Modular).unwrap();
    (second, probe)
}

#[test]
fn sigma_degree_matches_hilbert_function_on_ci22() {
    let (oracle, probe) = surface_degree("ci22", 7, 6);
    assert_eq!(oracle, 8);
    assert_eq!(probe, oracle);
}

#[test]
fn sigma_degree_matches_hilbert_function_on_grass_quintic() {
    let (oracle, probe) = surface_degree("grass_quintic", 7, 5);
    assert_eq!(oracle, 5);
    assert_eq!(probe, oracle);
}
