//! Line-geometric measurements of a hypersurface `X = {G = 0}` in `P^4` and
//! the classification of threefolds covered by a 2-dimensional family of
//! lines.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::FamilySpec;
use crate::exactcore::matrix::{field_kernel, field_rank};
use crate::exactcore::modular::poly as fpoly;
use crate::exactcore::{resultant, ExactMatrix, Field, Fp, Mono, MultiPoly, Scalar, PRIME_A};
use crate::geometry::{normalize_chart, restrict_gradient_to_line, line_on_hypersurface, LineP4, LocalModel, ProjPoint};
use crate::solve::{
    count_affine_solutions_with, count_plane_points_with, is_reduced_at, local_multiplicity, Arith, FanCount,
    PlaneOptions, PlaneSystem, Lcg,
};
use crate::Error;

/// Retries with a fresh random plane or hyperplane before giving up.
const PROBE_RESEEDS: usize = 8;

fn degree(g: &MultiPoly) -> Result<u32, Error> {
    if g.nvars() != 5 || g.is_zero() || !g.is_homogeneous() {
        return Err(Error::Invalid("expected a nonzero form in x0..x4".into()));
    }
    Ok(g.total_degree().unwrap())
}

fn plane_system(model: &LocalModel) -> Result<PlaneSystem, Error> {
    let mut polys = model.f.clone();
    while polys.len() < 2 {
        polys.push(MultiPoly::zero(3));
    }
    PlaneSystem::new(polys)
}

fn random_point(rng: &mut Lcg, r: i64) -> Vec<Scalar> {
    (0..5).map(|_| Scalar::from_int(rng.int_in(-r, r))).collect()
}

/// Lines of `X` through the smooth point `p`, as points of `P(T_pX)`.
pub fn lines_through_point(g: &MultiPoly, p: &ProjPoint, seed: u64, opts: PlaneOptions) -> Result<FanCount, Error> {
    degree(g)?;
    let model = normalize_chart(g, p)?;
    count_plane_points_with(&plane_system(&model)?, seed, opts)
}

/// One sampled point of a `mu` estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuSample {
    pub point: ProjPoint,
    pub fan: Option<FanCount>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuEstimate {
    pub mu: usize,
    pub samples: Vec<MuSample>,
}

/// The generic number of lines through a point of a catalog family.
pub fn mu_generic(family: &FamilySpec, trials: usize, seed: u64, arith: Arith) -> Result<MuEstimate, Error> {
    if trials < 5 {
        return Err(Error::Invalid("at least 5 trials are needed".into()));
    }
    let points = family.sample_points(trials, seed)?;
    mu_from_points(&family.implicit_eq, &points, seed, arith)
}

/// The largest line count attained at two or more of the given points.
pub fn mu_from_points(g: &MultiPoly, points: &[ProjPoint], seed: u64, arith: Arith) -> Result<MuEstimate, Error> {
    let mut samples = Vec::new();
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, p) in points.iter().enumerate() {
        match lines_through_point(g, p, seed.wrapping_add(k as u64), PlaneOptions::counts_only(arith)) {
            Ok(fan) => {
                if !fan.infinite {
                    *seen.entry(fan.distinct).or_default() += 1;
                }
                samples.push(MuSample { point: p.clone(), fan: Some(fan), error: None });
            }
            Err(e @ (Error::SingularBasePoint | Error::NotOnHypersurface)) => {
                samples.push(MuSample { point: p.clone(), fan: None, error: Some(e.to_string()) })
            }
            Err(e) => return Err(e),
        }
    }
    let mu = seen.iter().rev().find(|(_, &c)| c >= 2).map(|(&m, _)| m).ok_or(Error::NoGeneralPoint)?;
    Ok(MuEstimate { mu, samples })
}

/// A smooth point of `X` on `r` with coordinates in Q(i).
pub fn smooth_point_on_line(g: &MultiPoly, r: &LineP4) -> Result<ProjPoint, Error> {
    let ts = [0, 1, -1, 2, -2, 3, -3, 5, -5, 7];
    for t in ts {
        let p = r.point_at(&Scalar::one(), &Scalar::from_int(t));
        match normalize_chart(g, &p) {
            Ok(_) => return Ok(p),
            Err(Error::SingularBasePoint) => continue,
            Err(e) => return Err(e),
        }
    }
    let b = r.span[1].clone();
    normalize_chart(g, &b).map(|_| b).map_err(|_| Error::SingularBasePoint)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reducedness {
    pub reduced: bool,
    pub length: usize,
    pub point: ProjPoint,
    pub fan_point: ProjPoint,
}

/// Is the Fano scheme reduced at `r`? Decided by the local length of the
/// line fan at a smooth point of `r`, at the fan point of `r`.
pub fn reduced_at_line(g: &MultiPoly, r: &LineP4) -> Result<Reducedness, Error> {
    degree(g)?;
    if !line_on_hypersurface(g, r) {
        return Err(Error::LineNotOnHypersurface);
    }
    let p = smooth_point_on_line(g, r)?;
    let model = normalize_chart(g, &p)?;
    let q = model.fan_point(r)?.ok_or_else(|| Error::Invalid("line not tangent at its own point".into()))?;
    let sys = plane_system(&model)?;
    let length = local_multiplicity(&sys, &q)?;
    let reduced = is_reduced_at(&sys, &q)?;
    Ok(Reducedness { reduced, length, point: p, fan_point: q.normalized() })
}

/// Length of `r ∩ Sing(X)`; `None` when `r` lies in the singular locus.
pub fn singular_points_on_line(g: &MultiPoly, r: &LineP4) -> Result<Option<usize>, Error> {
    Ok(restrict_gradient_to_line(g, r)?.gcd_degree)
}

/// The nonzero coefficients `E_1..E_n` of `G(l q + m p)` in `l^(n-k) m^k`,
/// where `q` and `p` are coordinate polynomials in `nv` variables and `q`
/// lies on `X`.
pub fn incidence_equations<F: Field>(g: &MultiPoly<F>, q: &[MultiPoly<F>], p: &[MultiPoly<F>], nv: usize) -> Vec<MultiPoly<F>> {
    let n = g.total_degree().unwrap();
    let m = nv + 2;
    let lift: Vec<usize> = (0..nv).collect();
    let subs: Vec<MultiPoly<F>> = (0..5)
        .map(|i| {
            &(&MultiPoly::var(m, nv) * &q[i].remap(m, &lift)) + &(&MultiPoly::var(m, nv + 1) * &p[i].remap(m, &lift))
        })
        .collect();
    let h = g.compose(&subs, m);
    let by_mu = h.coefficients_in(nv + 1);
    let mut drop: Vec<usize> = (0..nv).collect();
    drop.extend([usize::MAX, usize::MAX]);
    (1..=n as usize)
        .filter_map(|k| by_mu.get(k))
        .map(|c| c.partial_eval(nv, &F::one()).remap(nv, &drop))
        .filter(|e| !e.is_zero())
        .collect()
}

// The cell `w_c + sum_{j>c} v_j w_j` of the span of `basis`, with its
// variables starting at `offset` in a ring of `nv` variables.
fn cell_param(basis: &[Vec<Scalar>], c: usize, offset: usize, nv: usize) -> Vec<MultiPoly> {
    (0..basis[0].len())
        .map(|i| {
            let mut e = MultiPoly::constant(nv, basis[c][i].clone());
            for (j, w) in basis[c + 1..].iter().enumerate() {
                e = &e + &MultiPoly::var(nv, offset + j).scale(&w[i]);
            }
            e
        })
        .collect()
}

/// Number of pairs `(q, p)`, `q` in the span of `a`, `p` in the span of
/// `b`, such that the line `qp` lies on `X`, summed over the cells of both
/// projective spaces.
fn incidence_count(g: &MultiPoly, a: &[Vec<Scalar>], b: &[Vec<Scalar>], seed: u64, arith: Arith) -> Result<usize, Error> {
    let mut total = 0;
    let mut rng = Lcg::new(seed);
    for ca in 0..a.len() {
        for cb in 0..b.len() {
            let (da, db) = (a.len() - 1 - ca, b.len() - 1 - cb);
            let nv = da + db;
            let q = cell_param(a, ca, 0, nv);
            let p = cell_param(b, cb, da, nv);
            let eqs = incidence_equations(g, &q, &p, nv);
            if nv == 0 {
                total += usize::from(eqs.is_empty());
                continue;
            }
            total += count_affine_solutions_with(&eqs, None, rng.next_u64(), arith)?;
        }
    }
    Ok(total)
}

/// Number of lines of `X` meeting two skew lines `r`, `r2` of `X`.
pub fn mubar(g: &MultiPoly, r: &LineP4, r2: &LineP4, seed: u64, arith: Arith) -> Result<usize, Error> {
    let n = degree(g)?;
    if n < 4 {
        return Err(Error::DegreeTooSmall(n));
    }
    if !line_on_hypersurface(g, r) || !line_on_hypersurface(g, r2) {
        return Err(Error::LineNotOnHypersurface);
    }
    if r.meets(r2) {
        return Err(Error::LinesNotSkew);
    }
    let a = [r.span[0].coords.clone(), r.span[1].coords.clone()];
    let b = [r2.span[0].coords.clone(), r2.span[1].coords.clone()];
    incidence_count(g, &a, &b, seed, arith)
}

/// Degree of the surface swept by the lines of `X` meeting `r`: its
/// intersection count with a random plane.
pub fn sigma_degree(g: &MultiPoly, r: &LineP4, seed: u64, arith: Arith) -> Result<usize, Error> {
    let n = degree(g)?;
    if n < 4 {
        return Err(Error::DegreeTooSmall(n));
    }
    if !line_on_hypersurface(g, r) {
        return Err(Error::LineNotOnHypersurface);
    }
    let mut rng = Lcg::new(seed);
    let a = [r.span[0].coords.clone(), r.span[1].coords.clone()];
    let mut last = None;
    for _ in 0..=PROBE_RESEEDS {
        let plane: Vec<Vec<Scalar>> = (0..3).map(|_| random_point(&mut rng, 9)).collect();
        let mut rows = a.to_vec();
        rows.extend(plane.iter().cloned());
        if ExactMatrix::from_rows(rows).rank() < 5 {
            continue;
        }
        match incidence_count(g, &a, &plane, rng.next_u64(), arith) {
            Ok(c) => return Ok(c),
            Err(Error::PositiveDimensional(m)) => last = Some(m),
            Err(e) => return Err(e),
        }
    }
    Err(Error::PositiveDimensional(last.unwrap_or_else(|| "no plane avoiding the line".into())))
}

/// Rank of the quadratic form `F_2` at `p`; 0 at a cone point.
pub fn f2_rank(g: &MultiPoly, p: &ProjPoint) -> Result<usize, Error> {
    degree(g)?;
    let model = normalize_chart(g, p)?;
    let Some(f2) = model.f.first() else {
        return Ok(0);
    };
    Ok(quadratic_form_matrix(f2).rank())
}

/// Symmetric matrix of a quadratic form in three variables.
pub fn quadratic_form_matrix(f2: &MultiPoly) -> ExactMatrix {
    let half = Scalar::from_ratio(1, 2);
    let mut m = ExactMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let mut e = [0u32; 3];
            e[i] += 1;
            e[j] += 1;
            let c = f2.coeff(&Mono::from_exps(&e));
            m.set(i, j, if i == j { c } else { &c * &half });
        }
    }
    m
}

/// Number of singular points of `X` on a random plane.
pub fn sing_locus_plane_count(g: &MultiPoly, seed: u64, arith: Arith) -> Result<usize, Error> {
    degree(g)?;
    let mut rng = Lcg::new(seed);
    let grad = g.gradient();
    for _ in 0..=PROBE_RESEEDS {
        let plane: Vec<Vec<Scalar>> = (0..3).map(|_| random_point(&mut rng, 9)).collect();
        if ExactMatrix::from_rows(plane.clone()).rank() < 3 {
            continue;
        }
        let subs: Vec<MultiPoly> =
            (0..5).map(|i| MultiPoly::linear(&[plane[0][i].clone(), plane[1][i].clone(), plane[2][i].clone()])).collect();
        let polys: Vec<MultiPoly> = grad.iter().map(|d| d.compose(&subs, 3)).collect();
        let sys = PlaneSystem::new(polys)?;
        let opts = PlaneOptions { arith, rational_points: false, bezout: false };
        let fan = count_plane_points_with(&sys, rng.next_u64(), opts)?;
        if !fan.infinite {
            return Ok(fan.distinct);
        }
    }
    Err(Error::PositiveDimensional("the singular locus meets every sampled plane in a curve".into()))
}

/// A count that may be infinite; serializes as a number or `"infinite"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineCount {
    Finite(usize),
    Infinite,
}

impl Serialize for LineCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LineCount::Finite(n) => s.serialize_u64(*n as u64),
            LineCount::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for LineCount {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|v| LineCount::Finite(v as usize))
                .ok_or_else(|| serde::de::Error::custom("expected a count")),
            serde_json::Value::String(s) if s == "infinite" => Ok(LineCount::Infinite),
            _ => Err(serde::de::Error::custom("expected a count or \"infinite\"")),
        }
    }
}

impl fmt::Display for LineCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineCount::Finite(n) => write!(f, "{n}"),
            LineCount::Infinite => write!(f, "infinite"),
        }
    }
}

/// Number of lines on the surface `F = 0` in `P^3`, summed over the
/// Schubert cells of the Grassmannian of lines.
pub fn lines_on_surface(f: &MultiPoly, seed: u64, arith: Arith) -> Result<LineCount, Error> {
    if f.nvars() != 4 || f.is_zero() || !f.is_homogeneous() {
        return Err(Error::Invalid("expected a nonzero form in four variables".into()));
    }
    if f.is_constant() {
        return Ok(LineCount::Finite(0));
    }
    let mut rng = Lcg::new(seed);
    let change = loop {
        let rows: Vec<Vec<Scalar>> =
            (0..4).map(|_| (0..4).map(|_| Scalar::from_int(rng.int_in(-3, 3))).collect()).collect();
        let m = ExactMatrix::from_rows(rows);
        if m.rank() == 4 {
            break m;
        }
    };
    let f = f.linear_change(&change)?;
    let mut total = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            // Rows e_i + sum v_k e_k (k > i, k != j) and e_j + sum w_k e_k (k > j).
            let free1: Vec<usize> = (i + 1..4).filter(|&k| k != j).collect();
            let free2: Vec<usize> = (j + 1..4).collect();
            let nv = free1.len() + free2.len();
            let m = nv + 2;
            let row = |pivot: usize, free: &[usize], offset: usize| -> Vec<MultiPoly> {
                (0..4)
                    .map(|c| {
                        if c == pivot {
                            MultiPoly::one(m)
                        } else if let Some(k) = free.iter().position(|&x| x == c) {
                            MultiPoly::var(m, offset + k)
                        } else {
                            MultiPoly::zero(m)
                        }
                    })
                    .collect()
            };
            let r1 = row(i, &free1, 0);
            let r2 = row(j, &free2, free1.len());
            let subs: Vec<MultiPoly> =
                (0..4).map(|c| &(&MultiPoly::var(m, nv) * &r1[c]) + &(&MultiPoly::var(m, nv + 1) * &r2[c])).collect();
            let h = f.compose(&subs, m);
            let mut drop: Vec<usize> = (0..nv).collect();
            drop.extend([usize::MAX, usize::MAX]);
            let eqs: Vec<MultiPoly> = h
                .coefficients_in(nv + 1)
                .iter()
                .map(|c| c.partial_eval(nv, &Scalar::one()).remap(nv, &drop))
                .filter(|e| !e.is_zero())
                .collect();
            if nv == 0 {
                total += usize::from(eqs.is_empty());
                continue;
            }
            if eqs.is_empty() {
                return Ok(LineCount::Infinite);
            }
            match count_affine_solutions_with(&eqs, None, rng.next_u64(), arith) {
                Ok(c) => total += c,
                Err(Error::PositiveDimensional(_)) => return Ok(LineCount::Infinite),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(LineCount::Finite(total))
}

/// Lines of `X` in a random hyperplane.
pub fn nu(g: &MultiPoly, seed: u64, arith: Arith) -> Result<LineCount, Error> {
    degree(g)?;
    let mut rng = Lcg::new(seed);
    let h: Vec<Vec<Scalar>> = loop {
        let h: Vec<Vec<Scalar>> = (0..4).map(|_| random_point(&mut rng, 5)).collect();
        if ExactMatrix::from_rows(h.clone()).rank() == 4 {
            break h;
        }
    };
    let subs: Vec<MultiPoly> = (0..5).map(|i| MultiPoly::linear(&h.iter().map(|r| r[i].clone()).collect::<Vec<_>>())).collect();
    lines_on_surface(&g.compose(&subs, 4), rng.next_u64(), arith)
}

/// Does `σ(r)`, the surface swept by the lines of `X` meeting `r`, lie on
/// a quadric of its linear span? The lines through rational points of `r`
/// are found over a large prime field, where they need not be defined over
/// Q(i), and three points of each are sampled.
pub fn quadric_bundle_probe(g: &MultiPoly, r: &LineP4, seed: u64) -> Result<bool, Error> {
    let points = sigma_points_mod(g, r, QUADRIC_POINTS, 3, QUADRIC_ATTEMPTS, seed)?;
    if points.len() < QUADRIC_POINTS {
        return Err(Error::InsufficientRationalData);
    }
    Ok(on_quadric_of_span(&points))
}

/// Points of `σ(r)` over `Fp<PRIME_A>`: `per_line` random points on each
/// line of `X` through random points of `r`, other than `r`. Stops after
/// `count` points or `attempts` base points.
pub fn sigma_points_mod(
    g: &MultiPoly,
    r: &LineP4,
    count: usize,
    per_line: usize,
    attempts: usize,
    seed: u64,
) -> Result<Vec<Vec<Fp<PRIME_A>>>, Error> {
    degree(g)?;
    if !line_on_hypersurface(g, r) {
        return Err(Error::LineNotOnHypersurface);
    }
    let to_fa = |s: &Scalar| Fa::from_scalar(s).ok_or(Error::InsufficientRationalData);
    let mut rng = Lcg::new(seed);
    let rand = |rng: &mut Lcg| Fa::new(rng.next_u64() % PRIME_A);
    let mut points: Vec<Vec<Fa>> = Vec::new();
    for _ in 0..attempts {
        if points.len() >= count {
            break;
        }
        let t = Scalar::from_ratio(rng.int_in(-1000, 1000), rng.int_in(1, 1000));
        let q = r.point_at(&Scalar::one(), &t);
        let model = match normalize_chart(g, &q) {
            Ok(m) => m,
            Err(Error::SingularBasePoint) => continue,
            Err(e) => return Err(e),
        };
        // The fan in a random affine chart of P(T_qX).
        let change: Vec<Vec<Fa>> = (0..3).map(|_| (0..3).map(|_| rand(&mut rng)).collect()).collect();
        let subs: Vec<MultiPoly<Fa>> = (0..3)
            .map(|i| {
                &(&MultiPoly::var(2, 0).scale(&change[i][0]) + &MultiPoly::var(2, 1).scale(&change[i][1]))
                    + &MultiPoly::constant(2, change[i][2])
            })
            .collect();
        let mut eqs = Vec::new();
        for f in &model.f {
            let fp: MultiPoly<Fa> = f.map(Fa::from_scalar).ok_or(Error::InsufficientRationalData)?;
            let e = fp.compose(&subs, 2);
            if !e.is_zero() {
                eqs.push(e);
            }
        }
        let chart: Vec<Vec<Fa>> =
            model.chart.to_rows().iter().map(|row| row.iter().map(to_fa).collect()).collect::<Result<_, _>>()?;
        let qp: Vec<Fa> = q.coords.iter().map(to_fa).collect::<Result<_, _>>()?;
        for (u, v) in plane_chart_points(&eqs, &mut rng) {
            let w: Vec<Fa> = (0..3).map(|i| change[i][0].times(&u).plus(&change[i][1].times(&v)).plus(&change[i][2])).collect();
            let dir: Vec<Fa> = (0..5)
                .map(|k| (0..3).fold(Fa::zero(), |acc, j| acc.plus(&chart[k][j + 1].times(&w[j]))))
                .collect();
            // Skip r itself: its direction is in the span of q and r's points.
            let mut with_r = vec![qp.clone(), dir.clone()];
            with_r.push(r.span[0].coords.iter().map(to_fa).collect::<Result<_, _>>()?);
            with_r.push(r.span[1].coords.iter().map(to_fa).collect::<Result<_, _>>()?);
            if field_rank(with_r, 5) <= 2 {
                continue;
            }
            for _ in 0..per_line {
                let s = rand(&mut rng);
                points.push((0..5).map(|k| qp[k].plus(&s.times(&dir[k]))).collect());
            }
        }
    }
    Ok(points)
}

type Fa = Fp<PRIME_A>;
const QUADRIC_POINTS: usize = 45;
const QUADRIC_ATTEMPTS: usize = 400;

// Common zeros over the prime field of polynomials in two variables.
fn plane_chart_points(eqs: &[MultiPoly<Fa>], rng: &mut Lcg) -> Vec<(Fa, Fa)> {
    if eqs.len() < 2 {
        return Vec::new();
    }
    let combo = |rng: &mut Lcg| {
        eqs.iter().fold(MultiPoly::zero(2), |acc, e| &acc + &e.scale(&Fa::new(rng.next_u64() % PRIME_A)))
    };
    let (c1, c2, c3) = (combo(rng), combo(rng), combo(rng));
    let dense = |f: &MultiPoly<Fa>, v: usize| -> Option<Vec<u64>> {
        Some(f.to_unipoly(v)?.coeffs().iter().map(|c| c.value()).collect())
    };
    let (Ok(r1), Ok(r2)) = (resultant(&c1, &c2, 1), resultant(&c1, &c3, 1)) else {
        return Vec::new();
    };
    let (Some(r1), Some(r2)) = (dense(&r1, 0), dense(&r2, 0)) else {
        return Vec::new();
    };
    let h = fpoly::gcd(&r1, &r2, PRIME_A);
    if h.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for u in fpoly::roots(&h, PRIME_A, || rng.next_u64()) {
        let u = Fa::new(u);
        let mut gv: Vec<u64> = Vec::new();
        for e in eqs {
            if let Some(d) = dense(&e.partial_eval(0, &u), 1) {
                gv = fpoly::gcd(&gv, &d, PRIME_A);
            }
        }
        for v in fpoly::roots(&gv, PRIME_A, || rng.next_u64()) {
            let pt = [u, Fa::new(v)];
            if eqs.iter().all(|e| e.eval(&pt).is_zero()) {
                out.push((pt[0], pt[1]));
            }
        }
    }
    out
}

// Is there a quadric of the linear span of `pts` containing all of them?
fn on_quadric_of_span(pts: &[Vec<Fa>]) -> bool {
    let rank = field_rank(pts.to_vec(), 5);
    // Coordinates on which the projection of the span is injective.
    let mut cols: Vec<usize> = Vec::new();
    for c in 0..5 {
        let mut trial = cols.clone();
        trial.push(c);
        let sub: Vec<Vec<Fa>> = pts.iter().map(|p| trial.iter().map(|&k| p[k]).collect()).collect();
        if field_rank(sub, trial.len()) == trial.len() {
            cols = trial;
        }
    }
    debug_assert_eq!(cols.len(), rank);
    let monos: Vec<(usize, usize)> = (0..rank).flat_map(|i| (i..rank).map(move |j| (i, j))).collect();
    let rows: Vec<Vec<Fa>> =
        pts.iter().map(|p| monos.iter().map(|&(i, j)| p[cols[i]].times(&p[cols[j]])).collect()).collect();
    !field_kernel(rows, monos.len()).is_empty()
}

/// A count, or `"unknown"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentsHint {
    Known(usize),
    Unknown,
}

impl Serialize for ComponentsHint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ComponentsHint::Known(n) => s.serialize_u64(*n as u64),
            ComponentsHint::Unknown => s.serialize_str("unknown"),
        }
    }
}

impl<'de> Deserialize<'de> for ComponentsHint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|v| ComponentsHint::Known(v as usize))
                .ok_or_else(|| serde::de::Error::custom("expected a count")),
            serde_json::Value::String(s) if s == "unknown" => Ok(ComponentsHint::Unknown),
            _ => Err(serde::de::Error::custom("expected a count or \"unknown\"")),
        }
    }
}

/// A case of the classification, or `"unclassified"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    Case(u8),
    Unclassified,
}

impl Serialize for CaseLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CaseLabel::Case(n) => s.serialize_u64(*n as u64),
            CaseLabel::Unclassified => s.serialize_str("unclassified"),
        }
    }
}

impl<'de> Deserialize<'de> for CaseLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => match n.as_u64() {
                Some(v @ 1..=5) => Ok(CaseLabel::Case(v as u8)),
                _ => Err(serde::de::Error::custom("case must be 1..5")),
            },
            serde_json::Value::String(s) if s == "unclassified" => Ok(CaseLabel::Unclassified),
            _ => Err(serde::de::Error::custom("expected a case number or \"unclassified\"")),
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseLabel::Case(n) => write!(f, "{n}"),
            CaseLabel::Unclassified => write!(f, "unclassified"),
        }
    }
}

/// The result of a probe run; absent probes are `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub n: u32,
    pub mu: Option<usize>,
    pub mu_samples: Vec<MuSample>,
    pub mubar: Option<usize>,
    pub sigma_deg: Option<usize>,
    pub f2_rank: Option<usize>,
    /// Keyed by the line as `a;b`; `null` when the line lies in Sing(X).
    pub sing_on_line: BTreeMap<String, Option<usize>>,
    pub sing_locus_plane_count: Option<usize>,
    pub nu: Option<LineCount>,
    pub reduced: BTreeMap<String, bool>,
    pub components_hint: ComponentsHint,
    pub case: CaseLabel,
    pub seed: u64,
}

impl ProbeReport {
    pub fn new(n: u32, seed: u64) -> Self {
        ProbeReport {
            n,
            mu: None,
            mu_samples: Vec::new(),
            mubar: None,
            sigma_deg: None,
            f2_rank: None,
            sing_on_line: BTreeMap::new(),
            sing_locus_plane_count: None,
            nu: None,
            reduced: BTreeMap::new(),
            components_hint: ComponentsHint::Unknown,
            case: CaseLabel::Unclassified,
            seed,
        }
    }

    /// Violations of the global bounds on `mu`.
    pub fn bound_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(mu) = self.mu {
            if mu > 6 {
                out.push(format!("mu = {mu} > 6"));
            }
            if self.n > 3 && mu > 4 {
                out.push(format!("mu = {mu} > 4 with n = {}", self.n));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub case: CaseLabel,
    /// The constraints that ruled out each case when unclassified.
    pub failed: Vec<String>,
}

/// The decision table of the classification.
pub fn classify(report: &ProbeReport) -> Classification {
    let n = report.n;
    let mu = report.mu;
    let comp = match report.components_hint {
        ComponentsHint::Known(c) => Some(c),
        ComponentsHint::Unknown => None,
    };
    let case = |c: u8| Classification { case: CaseLabel::Case(c), failed: Vec::new() };
    if n == 3 {
        return case(1);
    }
    let Some(mu) = mu else {
        return Classification { case: CaseLabel::Unclassified, failed: vec!["mu not measured".into()] };
    };
    match (n, mu) {
        (4, 4) => return case(2),
        (5, 3) => return case(3),
        (6, 2) => return case(4),
        _ => {}
    }
    if n <= 6 && mu >= 3 && comp.is_some_and(|c| c >= 3) {
        return case(5);
    }
    let mut failed = vec![
        "case 1: n = 3".to_string(),
        "case 2: n = 4 and mu = 4".to_string(),
        "case 3: n = 5 and mu = 3".to_string(),
        "case 4: n = 6 and mu = 2".to_string(),
    ];
    let mut c5 = Vec::new();
    if n > 6 {
        c5.push("n <= 6");
    }
    if mu < 3 {
        c5.push("mu >= 3");
    }
    if !comp.is_some_and(|c| c >= 3) {
        c5.push("components >= 3");
    }
    failed.push(format!("case 5: {}", c5.join(" and ")));
    Classification { case: CaseLabel::Unclassified, failed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::parse_polynomial;

    fn example41() -> MultiPoly {
        parse_polynomial("y4 + y1*y4 - y2^2 - y3^2 - y1*y2^2 - 2*y2*y3*y4 - y4^3").unwrap()
    }

    fn line(s: &str) -> LineP4 {
        LineP4::parse(s).unwrap()
    }

    #[test]
    fn example_fixture_at_the_origin() {
        let g = example41();
        let o = ProjPoint::from_ints(&[1, 0, 0, 0, 0]);
        let fan = lines_through_point(&g, &o, 0, PlaneOptions::default()).unwrap();
        assert_eq!((fan.distinct, fan.bezout_total), (3, Some(6)));
        let mut m: Vec<usize> = fan.mult_list.iter().map(|f| f.multiplicity).collect();
        m.sort();
        assert_eq!(m, vec![1, 1, 4]);
        let r = line("1,0,0,0,0;0,1,0,0,0");
        let red = reduced_at_line(&g, &r).unwrap();
        assert_eq!((red.reduced, red.length), (false, 4));
        assert_eq!(singular_points_on_line(&g, &r).unwrap(), Some(2));
        assert_eq!(f2_rank(&g, &o).unwrap(), 2);
    }

    #[test]
    fn reduced_line_on_a_cubic() {
        let g = parse_polynomial("x4*x0^2 + x0*x1*x2 + x1^2*x3").unwrap();
        let r = line("1,0,0,0,0;0,1,0,0,0");
        let red = reduced_at_line(&g, &r).unwrap();
        assert!(red.reduced);
        assert_eq!(red.length, 1);
        assert_eq!(singular_points_on_line(&g, &r).unwrap(), Some(0));
    }

    #[test]
    fn doubled_direction_is_not_reduced() {
        let g = parse_polynomial("y4 + y2^2 + y1^2*y3").unwrap();
        let red = reduced_at_line(&g, &line("1,0,0,0,0;0,1,0,0,0")).unwrap();
        assert_eq!((red.reduced, red.length), (false, 2));
    }

    #[test]
    fn fermat_cone_point() {
        let g = parse_polynomial("x0^3 + x1^3 + x2^3 + x3^3 + x4^3").unwrap();
        let p = ProjPoint::from_ints(&[1, -1, 0, 0, 0]);
        assert_eq!(f2_rank(&g, &p).unwrap(), 0);
        assert!(lines_through_point(&g, &p, 0, PlaneOptions::default()).unwrap().infinite);
    }

    #[test]
    fn surfaces() {
        let fermat = parse_polynomial("x0^3 + x1^3 + x2^3 + x3^3").unwrap().remap(4, &[0, 1, 2, 3, usize::MAX]);
        assert_eq!(lines_on_surface(&fermat, 1, Arith::Modular).unwrap(), LineCount::Finite(27));
        let quadric = parse_polynomial("x0*x3 - x1*x2").unwrap().remap(4, &[0, 1, 2, 3, usize::MAX]);
        assert_eq!(lines_on_surface(&quadric, 1, Arith::Exact).unwrap(), LineCount::Infinite);
        let plane = MultiPoly::var(4, 0);
        assert_eq!(lines_on_surface(&plane, 1, Arith::Exact).unwrap(), LineCount::Infinite);
    }

    #[test]
    fn classification_table() {
        let mut r = ProbeReport::new(4, 0);
        r.mu = Some(4);
        assert_eq!(classify(&r).case, CaseLabel::Case(2));
        r.n = 5;
        r.mu = Some(3);
        assert_eq!(classify(&r).case, CaseLabel::Case(3));
        r.n = 6;
        r.components_hint = ComponentsHint::Known(3);
        assert_eq!(classify(&r).case, CaseLabel::Case(5));
        r.components_hint = ComponentsHint::Unknown;
        let c = classify(&r);
        assert_eq!(c.case, CaseLabel::Unclassified);
        assert!(c.failed.iter().any(|f| f.contains("components")));
    }

    #[test]
    fn report_json_keys() {
        let r = ProbeReport::new(3, 7);
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut expected = vec![
            "n", "mu", "mu_samples", "mubar", "sigma_deg", "f2_rank", "sing_on_line", "sing_locus_plane_count", "nu",
            "reduced", "components_hint", "case", "seed",
        ];
        expected.sort();
        let mut got: Vec<&str> = keys.iter().map(|s| s.as_str()).collect();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(v["case"], "unclassified");
        assert_eq!(serde_json::from_value::<ProbeReport>(v).unwrap(), r);
    }
}
