//! The families of threefolds covered by a 2-dimensional family of lines:
//! constructions, point samplers, generic projections to `P^4` and implicit
//! equations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactcore::matrix::primitive_vector;
use crate::exactcore::modular::{crt, kernel_mod, mul_mod, primes_one_mod_four, rational_reconstruct, reduce_scalar, sqrt_minus_one};
use crate::exactcore::multipoly::default_var_names;
use crate::exactcore::parse::parse_with_vars;
use crate::exactcore::{parse_polynomial, print_polynomial, resultant, ExactMatrix, Mono, MultiPoly, Scalar};
use crate::geometry::{line_on_hypersurface, plucker_from_span, plucker_pairs, LineP4, ProjPoint};
use crate::probes::{classify, CaseLabel, ComponentsHint, ProbeReport};
use crate::solve::Lcg;
use crate::Error;

pub const FAMILY_NAMES: [&str; 6] = ["cubic_smooth", "example41", "ci22", "grass_quintic", "p2xp2_section", "segre_cube"];

/// Reseeds of the projection center before a build gives up.
const BUILD_RESEEDS: u64 = 8;
/// Fresh samples on which every implicit equation is checked.
pub const FRESH_SAMPLES: usize = 50;
const MAX_PRIMES: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub n: u32,
    pub mu: usize,
    pub components: usize,
    pub case: u8,
}

/// How the points of a family are produced. Sampled points live in the
/// source space and are mapped to `P^4` by `projection` (5 rows).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    /// A cubic containing `line`; a point is the residual intersection of a
    /// tangent line at a point of `line`.
    CubicWithLine { line: LineP4 },
    /// Two quadrics of `P^5` (text in `x0..x5`) containing `lines`; a point
    /// is the residual point of a plane through one of the lines.
    QuadricPair { quadrics: [String; 2], lines: Vec<[ProjPoint; 2]>, projection: Vec<Vec<Scalar>> },
    /// Lines of `P^4` whose Plücker vectors satisfy three linear `forms`.
    GrassmannSection { forms: Vec<Vec<Scalar>>, projection: Vec<Vec<Scalar>> },
    /// `u ⊗ v` in `P^8` with `u^T B v = 0`.
    SegrePlaneSection { bilinear: Vec<Vec<Scalar>>, projection: Vec<Vec<Scalar>> },
    /// `a ⊗ b ⊗ c` in `P^7`.
    SegreCube { projection: Vec<Vec<Scalar>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: String,
    pub seed: u64,
    pub ambient_dim: usize,
    #[serde(with = "poly_text")]
    pub implicit_eq: MultiPoly,
    pub known_lines: Vec<LineP4>,
    pub expected: Expected,
    pub construction: Construction,
}

mod poly_text {
    use super::*;

    pub fn serialize<S: serde::Serializer>(f: &MultiPoly, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print_polynomial(f))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<MultiPoly, D::Error> {
        let text = String::deserialize(d)?;
        parse_polynomial(&text).map_err(serde::de::Error::custom)
    }
}

fn random_vec(rng: &mut Lcg, len: usize, r: i64) -> Vec<Scalar> {
    (0..len).map(|_| Scalar::from_int(rng.int_in(-r, r))).collect()
}

fn random_matrix(rng: &mut Lcg, rows: usize, cols: usize, r: i64) -> Vec<Vec<Scalar>> {
    (0..rows).map(|_| random_vec(rng, cols, r)).collect()
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
}

fn combine(basis: &[Vec<Scalar>], coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); basis[0].len()];
    for (b, c) in basis.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(b) {
            *o = &*o + &(x * c);
        }
    }
    out
}

fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Image of a source point under `projection`; `None` on the center.
pub fn project(projection: &[Vec<Scalar>], x: &[Scalar]) -> Option<Vec<Scalar>> {
    let y: Vec<Scalar> = projection.iter().map(|row| dot(row, x)).collect();
    (!is_zero_vec(&y)).then(|| primitive_vector(&y))
}

/// Image of the line `ab`; fails when the line meets the center.
pub fn known_line_transport(projection: &[Vec<Scalar>], a: &[Scalar], b: &[Scalar]) -> Result<LineP4, Error> {
    let pa = projection.iter().map(|row| dot(row, a)).collect();
    let pb = projection.iter().map(|row| dot(row, b)).collect();
    let (Ok(pa), Ok(pb)) = (ProjPoint::new(pa), ProjPoint::new(pb)) else {
        return Err(Error::LineMeetsCenter);
    };
    let pa = ProjPoint { coords: primitive_vector(&pa.coords) };
    let pb = ProjPoint { coords: primitive_vector(&pb.coords) };
    plucker_from_span(&pa, &pb).map_err(|_| Error::LineMeetsCenter)
}

fn wedge(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    plucker_pairs(5).iter().map(|&(i, j)| &(&u[i] * &v[j]) - &(&u[j] * &v[i])).collect()
}

fn tensor(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect()
}

impl Construction {
    fn projection(&self) -> Option<&Vec<Vec<Scalar>>> {
        match self {
            Construction::CubicWithLine { .. } => None,
            Construction::QuadricPair { projection, .. }
            | Construction::GrassmannSection { projection, .. }
            | Construction::SegrePlaneSection { projection, .. }
            | Construction::SegreCube { projection } => Some(projection),
        }
    }

    /// One point of the source variety; `None` when the random choice was
    /// degenerate.
    fn sample_source(&self, eq: Option<&MultiPoly>, rng: &mut Lcg) -> Result<Option<Vec<Scalar>>, Error> {
        Ok(match self {
            Construction::CubicWithLine { line } => {
                let g = eq.ok_or_else(|| Error::Invalid("the cubic sampler needs the equation".into()))?;
                residual_on_cubic(g, line, rng)
            }
            Construction::QuadricPair { quadrics, lines, .. } => {
                let names = default_var_names(6);
                let q1 = parse_with_vars(&quadrics[0], &names)?;
                let q2 = parse_with_vars(&quadrics[1], &names)?;
                let k = rng.int_in(0, lines.len() as i64 - 1) as usize;
                residual_in_plane(&q1, &q2, &lines[k], rng)
            }
            Construction::GrassmannSection { forms, .. } => {
                let u = random_vec(rng, 5, 9);
                if is_zero_vec(&u) {
                    return Ok(None);
                }
                // Coefficient of v_j in L(u ∧ v).
                let pairs = plucker_pairs(5);
                let rows: Vec<Vec<Scalar>> = forms
                    .iter()
                    .map(|c| {
                        let mut row = vec![Scalar::zero(); 5];
                        for (k, &(i, j)) in pairs.iter().enumerate() {
                            row[j] = &row[j] + &(&c[k] * &u[i]);
                            row[i] = &row[i] - &(&c[k] * &u[j]);
                        }
                        row
                    })
                    .collect();
                let ker = ExactMatrix::from_rows(rows).kernel();
                if ker.len() != 2 {
                    return Ok(None);
                }
                let v = combine(&ker, &random_vec(rng, 2, 9));
                let w = wedge(&u, &v);
                (!is_zero_vec(&w)).then_some(w)
            }
            Construction::SegrePlaneSection { bilinear, .. } => {
                let u = random_vec(rng, 3, 9);
                let row: Vec<Scalar> = (0..3).map(|j| (0..3).fold(Scalar::zero(), |a, i| &a + &(&u[i] * &bilinear[i][j]))).collect();
                if is_zero_vec(&u) || is_zero_vec(&row) {
                    return Ok(None);
                }
                let ker = ExactMatrix::from_rows(vec![row]).kernel();
                let v = combine(&ker, &random_vec(rng, 2, 9));
                (!is_zero_vec(&v)).then(|| tensor(&u, &v))
            }
            Construction::SegreCube { .. } => {
                let (a, b, c) = (random_vec(rng, 2, 9), random_vec(rng, 2, 9), random_vec(rng, 2, 9));
                if is_zero_vec(&a) || is_zero_vec(&b) || is_zero_vec(&c) {
                    return Ok(None);
                }
                Some(tensor(&tensor(&a, &b), &c))
            }
        })
    }

    /// One point of the threefold in `P^4`, resampling degenerate draws.
    pub fn sample(&self, eq: Option<&MultiPoly>, rng: &mut Lcg) -> Result<Vec<Scalar>, Error> {
        for _ in 0..100 {
            let Some(x) = self.sample_source(eq, rng)? else {
                continue;
            };
            match self.projection() {
                None => return Ok(primitive_vector(&x)),
                Some(p) => {
                    if let Some(y) = project(p, &x) {
                        return Ok(y);
                    }
                }
            }
        }
        Err(Error::DegenerateProjection)
    }
}

// Residual intersection with X of a random tangent line at a point of `line`.
fn residual_on_cubic(g: &MultiPoly, line: &LineP4, rng: &mut Lcg) -> Option<Vec<Scalar>> {
    let t = Scalar::from_ratio(rng.int_in(-30, 30), rng.int_in(1, 7));
    let q = line.point_at(&Scalar::one(), &t).coords;
    let grad: Vec<Scalar> = g.gradient().iter().map(|d| d.eval(&q)).collect();
    let m = grad.iter().position(|c| !c.is_zero())?;
    let w = random_vec(rng, 5, 9);
    let k = &dot(&grad, &w) / &grad[m];
    let mut v = w;
    v[m] = &v[m] - &k;
    let at = |s: i64| -> Scalar {
        let x: Vec<Scalar> = q.iter().zip(&v).map(|(a, b)| a + &(b * &Scalar::from_int(s))).collect();
        g.eval(&x)
    };
    // G(q + s v) = c2 s^2 + c3 s^3.
    let (h1, hm1) = (at(1), at(-1));
    let half = Scalar::from_ratio(1, 2);
    let c2 = &(&h1 + &hm1) * &half;
    let c3 = &(&h1 - &hm1) * &half;
    if c2.is_zero() || c3.is_zero() {
        return None;
    }
    let s = -&(&c2 / &c3);
    Some(q.iter().zip(&v).map(|(a, b)| a + &(b * &s)).collect())
}

// Residual point of `Q1 = Q2 = 0` in the plane spanned by `line` and a
// random point.
fn residual_in_plane(q1: &MultiPoly, q2: &MultiPoly, line: &[ProjPoint; 2], rng: &mut Lcg) -> Option<Vec<Scalar>> {
    let w = random_vec(rng, 6, 9);
    let (a, b) = (&line[0].coords, &line[1].coords);
    let subs: Vec<MultiPoly> = (0..6).map(|i| MultiPoly::linear(&[a[i].clone(), b[i].clone(), w[i].clone()])).collect();
    let l1 = q1.compose(&subs, 3).divide_by_var(2)?;
    let l2 = q2.compose(&subs, 3).divide_by_var(2)?;
    let c = |l: &MultiPoly| -> Vec<Scalar> { (0..3).map(|i| l.coeff(&Mono::from_exps(&unit(3, i)))).collect() };
    let (u, v) = (c(&l1), c(&l2));
    let x = [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ];
    if x[2].is_zero() {
        return None;
    }
    Some((0..6).map(|i| &(&(&a[i] * &x[0]) + &(&b[i] * &x[1])) + &(&w[i] * &x[2])).collect())
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Exponent vectors of all monomials of degree `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for e in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The degree-`d` hypersurface through the points produced by `sampler`:
/// the kernel of the monomial evaluation matrix on `C(d+4,4)+10` samples,
/// computed modulo primes, lifted by CRT and rational reconstruction, and
/// verified exactly on the samples and on fresh ones.
pub fn implicitize_interpolation(
    sampler: &mut dyn FnMut(&mut Lcg) -> Result<Vec<Scalar>, Error>,
    d: u32,
    seed: u64,
) -> Result<MultiPoly, Error> {
    let mut rng = Lcg::new(seed);
    let monos = monomials(5, d);
    let count = binomial(d as usize + 4, 4) + 10;
    let pts: Vec<Vec<Scalar>> = (0..count).map(|_| sampler(&mut rng)).collect::<Result<_, _>>()?;
    let cols = monos.len();

    let rows_mod = |p: u64| -> Option<Vec<Vec<u64>>> {
        let iota = sqrt_minus_one(p);
        pts.iter()
            .map(|x| {
                let xs: Vec<u64> = x.iter().map(|c| reduce_scalar(c, p, iota)).collect::<Option<_>>()?;
                let pw: Vec<Vec<u64>> = xs
                    .iter()
                    .map(|&c| {
                        let mut v = vec![1u64; d as usize + 1];
                        for e in 1..=d as usize {
                            v[e] = mul_mod(v[e - 1], c, p);
                        }
                        v
                    })
                    .collect();
                Some(monos.iter().map(|m| (0..5).fold(1, |acc, i| mul_mod(acc, pw[i][m[i] as usize], p))).collect())
            })
            .collect()
    };

    let mut free_col = None;
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); cols];
    let mut modulus = BigInt::one();
    let mut previous: Option<Vec<BigRational>> = None;
    let mut dims = Vec::new();
    for p in primes_one_mod_four(1 << 62).take(MAX_PRIMES) {
        let Some(rows) = rows_mod(p) else {
            continue;
        };
        let (basis, free) = kernel_mod(rows, cols, p);
        if dims.len() < 2 {
            dims.push(basis.len());
            if dims.len() == 2 {
                match dims.iter().min().unwrap() {
                    0 => return Err(Error::DegreeTooLow),
                    1 => {}
                    _ => return Err(Error::DegreeTooHigh),
                }
            }
        }
        if basis.len() != 1 {
            continue;
        }
        match free_col {
            None => free_col = Some(free[0]),
            Some(f) if f != free[0] => continue,
            _ => {}
        }
        let v = &basis[0];
        let pb = BigInt::from(p);
        for (r, &x) in residues.iter_mut().zip(v) {
            *r = crt(r, &modulus, x, p);
        }
        modulus *= pb;
        if dims.len() < 2 {
            continue;
        }
        let Some(rec): Option<Vec<BigRational>> = residues.iter().map(|r| rational_reconstruct(r, &modulus)).collect() else {
            continue;
        };
        if previous.as_ref() != Some(&rec) {
            previous = Some(rec);
            continue;
        }
        let coeffs: Vec<Scalar> = primitive_vector(&rec.iter().map(Scalar::from_rational).collect::<Vec<_>>());
        let f = MultiPoly::from_terms(
            5,
            monos.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (Mono::from_exps(m), c)),
        );
        if pts.iter().all(|x| f.eval(x).is_zero()) {
            for _ in 0..FRESH_SAMPLES {
                if !f.eval(&sampler(&mut rng)?).is_zero() {
                    return Err(Error::DegreeTooHigh);
                }
            }
            return Ok(f);
        }
    }
    Err(Error::Invalid("interpolation did not stabilize".into()))
}

fn expected_for(name: &str) -> Expected {
    let (n, mu, components, case) = match name {
        "cubic_smooth" => (3, 6, 1, 1),
        "example41" => (3, 3, 2, 1),
        "ci22" => (4, 4, 1, 2),
        "grass_quintic" => (5, 3, 1, 3),
        "p2xp2_section" => (6, 2, 2, 4),
        _ => (6, 3, 3, 5),
    };
    Expected { n, mu, components, case }
}

impl Expected {
    /// A report carrying only the expected invariants.
    pub fn as_report(&self, seed: u64) -> ProbeReport {
        let mut r = ProbeReport::new(self.n, seed);
        r.mu = Some(self.mu);
        r.components_hint = ComponentsHint::Known(self.components);
        r
    }

    pub fn case_label(&self) -> CaseLabel {
        CaseLabel::Case(self.case)
    }
}

/// The equation of the smooth cubic with the rational point `[1,0,0,0,0]`
/// and the rational line through `[1,0,0,0,1]` in direction `[0,1,-1,0,0]`.
pub const CUBIC_SMOOTH: &str = "x0^2*x4 + x0*(x1^2 + x2^2 + x3^2) + x1^3 + x2^3 + x3^3 + x4^3 - 2*x0*x4^2 - 2*x1^2*x4 + x3*x4^2";
pub const CUBIC_SMOOTH_LINE: &str = "1,0,0,0,1;0,1,-1,0,0";
/// The cubic with a non-reduced Fano scheme at the line `y2 = y3 = y4 = 0`.
pub const EXAMPLE41: &str = "y4 + y1*y4 - y2^2 - y3^2 - y1*y2^2 - 2*y2*y3*y4 - y4^3";
pub const EXAMPLE41_LINE: &str = "1,0,0,0,0;0,1,0,0,0";

/// Build a catalog family deterministically from `seed`.
pub fn build_family(name: &str, seed: u64) -> Result<FamilySpec, Error> {
    let index = FAMILY_NAMES.iter().position(|&n| n == name).ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
    let expected = expected_for(name);
    let explicit = |text: &str, line: &str| -> Result<FamilySpec, Error> {
        let g = parse_polynomial(text)?;
        let line = LineP4::parse(line)?;
        Ok(FamilySpec {
            name: name.to_string(),
            seed,
            ambient_dim: 4,
            implicit_eq: g,
            known_lines: vec![line.clone()],
            expected,
            construction: Construction::CubicWithLine { line },
        })
    };
    match name {
        "cubic_smooth" => return explicit(CUBIC_SMOOTH, CUBIC_SMOOTH_LINE),
        "example41" => return explicit(EXAMPLE41, EXAMPLE41_LINE),
        _ => {}
    }
    let mut last = Error::DegenerateProjection;
    for attempt in 0..=BUILD_RESEEDS {
        let mut rng = Lcg::new(seed.wrapping_mul(0x100_0000_01b3).wrapping_add(index as u64 * 131 + attempt));
        let built = match name {
            "ci22" => build_ci22(&mut rng),
            "grass_quintic" => build_grass(&mut rng),
            "p2xp2_section" => build_p2xp2(&mut rng),
            _ => build_segre_cube(&mut rng),
        };
        match built {
            Ok((ambient_dim, construction, lines, eq)) => {
                let spec = FamilySpec {
                    name: name.to_string(),
                    seed,
                    ambient_dim,
                    implicit_eq: eq,
                    known_lines: lines,
                    expected,
                    construction,
                };
                if spec.implicit_eq.total_degree() == Some(expected.n) && spec.known_lines.iter().all(|l| line_on_hypersurface(&spec.implicit_eq, l)) {
                    return Ok(spec);
                }
                last = Error::DegenerateProjection;
            }
            Err(e @ (Error::DegreeTooLow | Error::DegreeTooHigh | Error::DegenerateProjection | Error::LineMeetsCenter)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(match last {
        Error::LineMeetsCenter => Error::LineMeetsCenter,
        _ => Error::DegenerateProjection,
    })
}

type Built = (usize, Construction, Vec<LineP4>, MultiPoly);

fn full_rank_projection(rng: &mut Lcg, cols: usize) -> Vec<Vec<Scalar>> {
    loop {
        let p = random_matrix(rng, 5, cols, 3);
        if ExactMatrix::from_rows(p.clone()).rank() == 5 {
            return p;
        }
    }
}

fn interpolate_construction(c: &Construction, d: u32, rng: &mut Lcg) -> Result<MultiPoly, Error> {
    let mut sampler = |r: &mut Lcg| c.sample(None, r);
    implicitize_interpolation(&mut sampler, d, rng.next_u64())
}

/// Conditions on the 21 coefficients of a quadric of `P^5` to contain the
/// line `ab`: `Q(a) = Q(b) = B(a, b) = 0`.
fn quadric_line_conditions(monos: &[Vec<u32>], a: &[Scalar], b: &[Scalar]) -> Vec<Vec<Scalar>> {
    let ev = |x: &[Scalar]| -> Vec<Scalar> {
        monos.iter().map(|m| (0..6).fold(Scalar::one(), |acc, i| &acc * &x[i].pow(m[i]))).collect()
    };
    let ab: Vec<Scalar> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    let (va, vb, vab) = (ev(a), ev(b), ev(&ab));
    let polar = (0..monos.len()).map(|k| &(&vab[k] - &va[k]) - &vb[k]).collect();
    vec![va, vb, polar]
}

fn build_ci22(rng: &mut Lcg) -> Result<Built, Error> {
    let names = default_var_names(6);
    let lines: Vec<[Vec<Scalar>; 2]> = (0..3).map(|_| [random_vec(rng, 6, 3), random_vec(rng, 6, 3)]).collect();
    let monos = monomials(6, 2);
    let mut rows = Vec::new();
    for [a, b] in &lines {
        rows.extend(quadric_line_conditions(&monos, a, b));
    }
    let ker = ExactMatrix::from_rows(rows).kernel();
    let quad = |rng: &mut Lcg| -> MultiPoly {
        let c = primitive_vector(&combine(&ker, &random_vec(rng, ker.len(), 3)));
        MultiPoly::from_terms(6, monos.iter().zip(c).map(|(m, c)| (Mono::from_exps(m), c)))
    };
    let (q1, q2) = (quad(rng), quad(rng));
    let projection = full_rank_projection(rng, 6);
    let center = ExactMatrix::from_rows(projection.clone()).kernel().remove(0);
    if q1.eval(&center).is_zero() && q2.eval(&center).is_zero() {
        return Err(Error::DegenerateProjection);
    }
    let known = lines.iter().map(|[a, b]| known_line_transport(&projection, a, b)).collect::<Result<Vec<_>, _>>()?;
    let eq = ci22_resultant_equation(&q1, &q2, &projection, rng)?;
    let construction = Construction::QuadricPair {
        quadrics: [q1.to_text(&names), q2.to_text(&names)],
        lines: lines
            .iter()
            .map(|[a, b]| [ProjPoint { coords: a.clone() }, ProjPoint { coords: b.clone() }])
            .collect(),
        projection,
    };
    Ok((5, construction, known, eq))
}

/// The image of `Q1 = Q2 = 0` under `projection` (5 × 6), as the resultant
/// along the direction of the center.
pub fn ci22_resultant_equation(q1: &MultiPoly, q2: &MultiPoly, projection: &[Vec<Scalar>], rng: &mut Lcg) -> Result<MultiPoly, Error> {
    let m = loop {
        let mut rows = projection.to_vec();
        rows.push(random_vec(rng, 6, 3));
        let m = ExactMatrix::from_rows(rows);
        if m.rank() == 6 {
            break m;
        }
    };
    let inv = m.inverse()?;
    let subs: Vec<MultiPoly> = (0..6).map(|i| MultiPoly::linear(&inv.row(i))).collect();
    let r = resultant(&q1.compose(&subs, 6), &q2.compose(&subs, 6), 5)?;
    if r.is_zero() {
        return Err(Error::DegenerateProjection);
    }
    Ok(r.remap(5, &[0, 1, 2, 3, 4, usize::MAX]).primitive())
}

fn build_grass(rng: &mut Lcg) -> Result<Built, Error> {
    let pencils: Vec<[Vec<Scalar>; 3]> =
        (0..3).map(|_| [random_vec(rng, 5, 3), random_vec(rng, 5, 3), random_vec(rng, 5, 3)]).collect();
    let mut rows = Vec::new();
    for [p, q1, q2] in &pencils {
        rows.push(wedge(p, q1));
        rows.push(wedge(p, q2));
    }
    let ker = ExactMatrix::from_rows(rows).kernel();
    if ker.len() != 4 {
        return Err(Error::DegenerateProjection);
    }
    let forms: Vec<Vec<Scalar>> = (0..3).map(|_| primitive_vector(&combine(&ker, &random_vec(rng, 4, 3)))).collect();
    let projection = full_rank_projection(rng, 10);
    let known = pencils
        .iter()
        .map(|[p, q1, q2]| known_line_transport(&projection, &wedge(p, q1), &wedge(p, q2)))
        .collect::<Result<Vec<_>, _>>()?;
    let c = Construction::GrassmannSection { forms, projection };
    let eq = interpolate_construction(&c, 5, rng)?;
    Ok((6, c, known, eq))
}

fn build_p2xp2(rng: &mut Lcg) -> Result<Built, Error> {
    let bilinear = random_matrix(rng, 3, 3, 3);
    if ExactMatrix::from_rows(bilinear.clone()).rank() < 3 {
        return Err(Error::DegenerateProjection);
    }
    let projection = full_rank_projection(rng, 9);
    let mut known = Vec::new();
    for _ in 0..3 {
        let u = random_vec(rng, 3, 3);
        let row: Vec<Scalar> = (0..3).map(|j| (0..3).fold(Scalar::zero(), |a, i| &a + &(&u[i] * &bilinear[i][j]))).collect();
        if is_zero_vec(&row) {
            return Err(Error::DegenerateProjection);
        }
        let ker = ExactMatrix::from_rows(vec![row]).kernel();
        known.push(known_line_transport(&projection, &tensor(&u, &ker[0]), &tensor(&u, &ker[1]))?);
    }
    let c = Construction::SegrePlaneSection { bilinear, projection };
    let eq = interpolate_construction(&c, 6, rng)?;
    Ok((7, c, known, eq))
}

fn build_segre_cube(rng: &mut Lcg) -> Result<Built, Error> {
    let projection = full_rank_projection(rng, 8);
    let e = |i: usize| -> Vec<Scalar> { (0..2).map(|k| Scalar::from_int(i64::from(k == i))).collect() };
    let mut known = Vec::new();
    // One ruling of each of the three kinds.
    for free in 0..3 {
        let (x, y) = (random_vec(rng, 2, 3), random_vec(rng, 2, 3));
        let ends: Vec<Vec<Scalar>> = (0..2)
            .map(|k| match free {
                0 => tensor(&tensor(&e(k), &x), &y),
                1 => tensor(&tensor(&x, &e(k)), &y),
                _ => tensor(&tensor(&x, &y), &e(k)),
            })
            .collect();
        if is_zero_vec(&ends[0]) || is_zero_vec(&ends[1]) {
            return Err(Error::DegenerateProjection);
        }
        known.push(known_line_transport(&projection, &ends[0], &ends[1])?);
    }
    let c = Construction::SegreCube { projection };
    let eq = interpolate_construction(&c, 6, rng)?;
    Ok((7, c, known, eq))
}

impl FamilySpec {
    /// `count` points of the threefold, deterministic in `seed`.
    pub fn sample_points(&self, count: usize, seed: u64) -> Result<Vec<ProjPoint>, Error> {
        let mut rng = Lcg::new(seed ^ 0x5eed_5a3d_1e5c_a7a1);
        (0..count)
            .map(|_| {
                let x = self.construction.sample(Some(&self.implicit_eq), &mut rng)?;
                ProjPoint::new(x)
            })
            .collect()
    }

    /// The catalog invariants: the equation vanishes on fresh samples, the
    /// known lines lie on it and the expected case is the classified one.
    pub fn check_invariants(&self, seed: u64) -> Result<(), Error> {
        for p in self.sample_points(FRESH_SAMPLES, seed)? {
            if !self.implicit_eq.eval(&p.coords).is_zero() {
                return Err(Error::Invalid(format!("implicit equation does not vanish at {p}")));
            }
        }
        if !self.known_lines.iter().all(|l| line_on_hypersurface(&self.implicit_eq, l)) {
            return Err(Error::LineNotOnHypersurface);
        }
        if classify(&self.expected.as_report(self.seed)).case != self.expected.case_label() {
            return Err(Error::Invalid("expected case disagrees with the classification".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperplane_by_interpolation() {
        let mut sampler = |r: &mut Lcg| -> Result<Vec<Scalar>, Error> {
            let mut v = random_vec(r, 5, 20);
            v[4] = Scalar::zero();
            if is_zero_vec(&v) {
                v[0] = Scalar::one();
            }
            Ok(v)
        };
        let f = implicitize_interpolation(&mut sampler, 1, 3).unwrap();
        assert_eq!(f, MultiPoly::var(5, 4));
        assert_eq!(implicitize_interpolation(&mut sampler, 2, 3).unwrap_err(), Error::DegreeTooHigh);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(5, 5).len(), 126);
        assert_eq!(monomials(5, 6).len(), 210);
        assert_eq!(binomial(10, 4), 210);
    }

    #[test]
    fn explicit_families() {
        for name in ["cubic_smooth", "example41"] {
            let spec = build_family(name, 0).unwrap();
            assert_eq!(spec.implicit_eq.total_degree(), Some(3));
            spec.check_invariants(1).unwrap();
        }
    }

    #[test]
    fn ci22_routes_agree() {
        let spec = build_family("ci22", 7).unwrap();
        spec.check_invariants(2).unwrap();
        let mut sampler = |r: &mut Lcg| spec.construction.sample(None, r);
        let f = implicitize_interpolation(&mut sampler, 4, 11).unwrap();
        assert_eq!(f.primitive(), spec.implicit_eq.primitive());
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<FamilySpec>(&json).unwrap(), spec);
    }

    #[test]
    fn line_through_center_is_rejected() {
        let projection = random_matrix(&mut Lcg::new(1), 5, 6, 3);
        let center = ExactMatrix::from_rows(projection.clone()).kernel().remove(0);
        let a = random_vec(&mut Lcg::new(2), 6, 3);
        assert_eq!(known_line_transport(&projection, &center, &a).unwrap_err(), Error::LineMeetsCenter);
    }

    #[test]
    fn unknown_family() {
        assert_eq!(build_family("quartic", 0).unwrap_err(), Error::UnknownFamily("quartic".into()));
    }
}
