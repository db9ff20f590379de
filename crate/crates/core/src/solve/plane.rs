//! Common zeros of homogeneous polynomials in the projective plane.

use serde::{Deserialize, Serialize};

use crate::exactcore::matrix::field_rank;
use crate::exactcore::{
    gaussian_rational_roots, gcd_many, resultant, ExactMatrix, Field, Fp, Mono, MultiPoly, Scalar, UniPoly, PRIME_A,
};
use crate::geometry::ProjPoint;
use crate::solve::affine::{solve_affine, Arith, RESEED_BUDGET};
use crate::solve::rng::Lcg;
use crate::Error;

/// Homogeneous polynomials in three variables.
#[derive(Clone, Debug)]
pub struct PlaneSystem {
    pub polys: Vec<MultiPoly>,
    /// Degree of each member; 0 for the zero polynomial.
    pub degrees: Vec<u32>,
}

impl PlaneSystem {
    pub fn new(polys: Vec<MultiPoly>) -> Result<Self, Error> {
        if polys.len() < 2 {
            return Err(Error::Invalid("a plane system needs at least two polynomials".into()));
        }
        for p in &polys {
            if p.nvars() != 3 || !p.is_homogeneous() {
                return Err(Error::Invalid("plane systems consist of forms in three variables".into()));
            }
        }
        if polys.iter().all(|p| p.is_zero()) {
            return Err(Error::AllZero);
        }
        let degrees = polys.iter().map(|p| p.total_degree().unwrap_or(0)).collect();
        Ok(PlaneSystem { polys, degrees })
    }

    fn nonzero(&self) -> Vec<&MultiPoly> {
        self.polys.iter().filter(|p| !p.is_zero()).collect()
    }

    fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// A common zero with coordinates in Q(i) and its local length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanPoint {
    pub point: ProjPoint,
    pub multiplicity: usize,
}

/// The common zeros of a plane system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanCount {
    /// Number of distinct common zeros over the algebraic closure.
    pub distinct: usize,
    /// The Q(i)-rational zeros, sorted by their printed coordinates.
    pub mult_list: Vec<FanPoint>,
    /// Sum of all local lengths; absent when infinite.
    pub bezout_total: Option<usize>,
    pub infinite: bool,
    pub seed: u64,
    /// Row-major integer matrix of the change of coordinates used.
    pub shear: Vec<i64>,
}

impl FanCount {
    fn infinite(seed: u64, shear: Vec<i64>) -> Self {
        FanCount { distinct: 0, mult_list: Vec::new(), bezout_total: None, infinite: true, seed, shear }
    }

    /// The fields that do not depend on the seed.
    pub fn same_counts(&self, o: &FanCount) -> bool {
        self.distinct == o.distinct
            && self.mult_list == o.mult_list
            && self.bezout_total == o.bezout_total
            && self.infinite == o.infinite
    }
}

/// What [`count_plane_points_with`] computes and how.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlaneOptions {
    /// With [`Arith::Modular`] the distinct count and the total length are
    /// computed modulo a large prime; rational points stay exact.
    pub arith: Arith,
    /// Find the Q(i)-rational zeros and their local lengths.
    pub rational_points: bool,
    /// Compute the total length.
    pub bezout: bool,
}

impl Default for PlaneOptions {
    fn default() -> Self {
        PlaneOptions { arith: Arith::Exact, rational_points: true, bezout: true }
    }
}

impl PlaneOptions {
    pub fn counts_only(arith: Arith) -> Self {
        PlaneOptions { arith, rational_points: false, bezout: true }
    }
}

/// Count common zeros exactly over Q(i).
pub fn count_plane_points(sys: &PlaneSystem, seed: u64) -> Result<FanCount, Error> {
    count_plane_points_with(sys, seed, PlaneOptions::default())
}

pub fn count_plane_points_with(sys: &PlaneSystem, seed: u64, opts: PlaneOptions) -> Result<FanCount, Error> {
    let arith = opts.arith;
    let nz = sys.nonzero();
    if nz.iter().any(|p| p.is_constant()) {
        return Ok(FanCount { distinct: 0, mult_list: Vec::new(), bezout_total: Some(0), infinite: false, seed, shear: Vec::new() });
    }
    let mut rng = Lcg::new(seed);
    if nz.len() < 2 {
        return Ok(FanCount::infinite(seed, Vec::new()));
    }
    for _ in 0..=RESEED_BUDGET {
        let (a, shear) = random_invertible(&mut rng);
        let q: Vec<MultiPoly> = nz.iter().map(|p| p.linear_change(&a).unwrap()).collect();
        let chart_subs = [MultiPoly::var(2, 0), MultiPoly::var(2, 1), MultiPoly::one(2)];
        let chart: Vec<MultiPoly> = q.iter().map(|p| p.compose(&chart_subs, 2)).collect();
        let solve_seed = rng.next_u64();
        let n_chart = match count_chart(&chart, solve_seed, arith) {
            Ok(c) => c,
            Err(Error::PositiveDimensional(_)) => return Ok(FanCount::infinite(seed, shear)),
            Err(e) => return Err(e),
        };
        // The line w = 0: points (u : 1 : 0) and (1 : 0 : 0).
        let line_subs = [MultiPoly::var(1, 0), MultiPoly::one(1), MultiPoly::zero(1)];
        let at_line: Vec<UniPoly> =
            q.iter().map(|p| p.compose(&line_subs, 1).to_unipoly(0).unwrap()).filter(|u| !u.is_zero()).collect();
        if at_line.is_empty() {
            return Ok(FanCount::infinite(seed, shear));
        }
        let g_line = gcd_many(&at_line)?;
        let corner = [Scalar::one(), Scalar::zero(), Scalar::zero()];
        let n_corner = usize::from(q.iter().all(|p| p.eval(&corner).is_zero()));
        let distinct = n_chart + g_line.distinct_root_count()? + n_corner;

        let mut points = Vec::new();
        if opts.rational_points {
            let Some(p) = rational_chart_points(&chart) else {
                continue;
            };
            points = p;
            points.extend(gaussian_rational_roots(&g_line).into_iter().map(|u| vec![u, Scalar::one(), Scalar::zero()]));
            if n_corner == 1 {
                points.push(corner.to_vec());
            }
        }
        let mut mult_list = Vec::new();
        for p in points {
            let orig = ProjPoint::new(a.mul_vec(&p))?.normalized();
            let m = local_multiplicity(sys, &orig)?;
            mult_list.push(FanPoint { point: orig, multiplicity: m });
        }
        mult_list.sort_by_key(|f| f.point.to_string());
        let bezout_total = match (opts.bezout, arith) {
            (false, _) => None,
            (true, Arith::Exact) => hilbert_total(sys, |p| Some(p.clone())),
            (true, Arith::Modular) => hilbert_total(sys, |p| p.map(Fp::<PRIME_A>::from_scalar)),
        };
        return Ok(FanCount { distinct, mult_list, bezout_total, infinite: false, seed, shear });
    }
    Err(Error::NoGenericPosition)
}

fn random_invertible(rng: &mut Lcg) -> (ExactMatrix, Vec<i64>) {
    loop {
        let e: Vec<i64> = (0..9).map(|_| rng.int_in(-4, 4)).collect();
        let m = ExactMatrix::from_rows(e.chunks(3).map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect());
        if m.rank() == 3 {
            return (m, e);
        }
    }
}

fn count_chart(chart: &[MultiPoly], seed: u64, arith: Arith) -> Result<usize, Error> {
    match arith {
        Arith::Exact => Ok(solve_affine(chart, None, seed)?.count()),
        Arith::Modular => {
            let red: Option<Vec<MultiPoly<Fp<PRIME_A>>>> = chart.iter().map(|p| p.map(Fp::from_scalar)).collect();
            match red {
                Some(r) => Ok(solve_affine(&r, None, seed)?.count()),
                None => Ok(solve_affine(chart, None, seed)?.count()),
            }
        }
    }
}

// Affine common zeros in Q(i)^2; `None` if the eliminants vanish.
fn rational_chart_points(chart: &[MultiPoly]) -> Option<Vec<Vec<Scalar>>> {
    let mut order: Vec<&MultiPoly> = chart.iter().filter(|p| !p.is_zero()).collect();
    order.sort_by_key(|p| (p.total_degree(), p.num_terms()));
    let base = order[0];
    let mut elim = Vec::new();
    for other in &order[1..] {
        let r = resultant(base, other, 1).ok()?;
        if !r.is_zero() {
            elim.push(r.to_unipoly(0).unwrap());
        }
    }
    if elim.is_empty() {
        return None;
    }
    let e = gcd_many(&elim).ok()?;
    let mut out = Vec::new();
    for u in gaussian_rational_roots(&e) {
        let fiber: Vec<UniPoly> = chart
            .iter()
            .map(|p| p.partial_eval(0, &u).to_unipoly(1).unwrap())
            .filter(|f| !f.is_zero())
            .collect();
        if fiber.is_empty() {
            return None;
        }
        let g = gcd_many(&fiber).ok()?;
        for v in gaussian_rational_roots(&g) {
            out.push(vec![u.clone(), v, Scalar::one()]);
        }
    }
    Some(out)
}

fn monomials(nvars: usize, d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    fn rec(v: usize, nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
        if v + 1 == nvars {
            cur.push(left);
            out.push(Mono::from_exps(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(v + 1, nvars, left - e, cur, out);
            cur.pop();
        }
    }
    rec(0, nvars, d, &mut Vec::new(), &mut out);
    out
}

// Total length of the zero scheme from the Hilbert function of the ideal:
// once H(D) = H(D+1) <= D in a degree past the generators, it is constant.
fn hilbert_total<F: Field>(sys: &PlaneSystem, conv: impl Fn(&MultiPoly) -> Option<MultiPoly<F>>) -> Option<usize> {
    let polys: Vec<MultiPoly<F>> = sys.nonzero().into_iter().map(&conv).collect::<Option<_>>()?;
    let dmax = sys.max_degree();
    let h = |d: u32| -> usize {
        let cols = monomials(3, d);
        let mut rows = Vec::new();
        for p in &polys {
            let e = p.total_degree().unwrap();
            if e > d {
                continue;
            }
            for m in monomials(3, d - e) {
                let prod = p.mul_mono(&m);
                rows.push(cols.iter().map(|c| prod.coeff(c)).collect::<Vec<F>>());
            }
        }
        cols.len() - field_rank(rows, cols.len())
    };
    let mut prev = h(dmax);
    for d in dmax..4 * dmax + 12 {
        let next = h(d + 1);
        if next == prev && prev <= d as usize {
            return Some(prev);
        }
        prev = next;
    }
    None
}

// Translate `pt` to the origin of the chart of its first nonzero coordinate.
fn local_equations(sys: &PlaneSystem, pt: &ProjPoint) -> Result<Vec<MultiPoly>, Error> {
    if pt.dim() != 3 {
        return Err(Error::Invalid("plane points have three coordinates".into()));
    }
    let p = pt.normalized();
    let k = p.coords.iter().position(|c| !c.is_zero()).unwrap();
    let mut subs = Vec::new();
    let mut idx = 0;
    for j in 0..3 {
        if j == k {
            subs.push(MultiPoly::one(2));
        } else {
            subs.push(&MultiPoly::var(2, idx) + &MultiPoly::constant(2, p.coords[j].clone()));
            idx += 1;
        }
    }
    let local: Vec<MultiPoly> = sys.nonzero().iter().map(|f| f.compose(&subs, 2)).collect();
    if local.iter().any(|f| !f.constant_term().is_zero()) {
        return Err(Error::Invalid("the point is not a common zero".into()));
    }
    Ok(local)
}

/// Length of the local ring of the common zero scheme at `pt`.
pub fn local_multiplicity(sys: &PlaneSystem, pt: &ProjPoint) -> Result<usize, Error> {
    let local = local_equations(sys, pt)?;
    let dmax = sys.max_degree().max(1);
    // dim of k[z]/(I + m^D): monomials of degree < D modulo truncated multiples.
    let dim = |d: u32| -> usize {
        let cols: Vec<Mono> = (0..d).flat_map(|e| monomials(2, e)).collect();
        let mut rows = Vec::new();
        for f in &local {
            let o = f.order().unwrap();
            for e in 0..d.saturating_sub(o) {
                for m in monomials(2, e) {
                    let prod = f.mul_mono(&m);
                    let row: Vec<Scalar> = cols.iter().map(|c| prod.coeff(c)).collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            return cols.len();
        }
        cols.len() - ExactMatrix::from_rows(rows).rank()
    };
    let cap = dmax * dmax + 2;
    let mut prev = dim(dmax);
    for d in dmax..=cap {
        let next = dim(d + 1);
        if next == prev {
            return Ok(prev);
        }
        prev = next;
    }
    Err(Error::PositiveDimensionalAtPoint)
}

/// Is the zero scheme reduced (of length 1) at `pt`?
pub fn is_reduced_at(sys: &PlaneSystem, pt: &ProjPoint) -> Result<bool, Error> {
    let local = local_equations(sys, pt)?;
    let linear: Vec<Vec<Scalar>> = local
        .iter()
        .map(|f| {
            let l = f.homogeneous_component(1);
            vec![l.coeff(&Mono::from_exps(&[1, 0])), l.coeff(&Mono::from_exps(&[0, 1]))]
        })
        .collect();
    if ExactMatrix::from_rows(linear).rank() == 2 {
        return Ok(true);
    }
    Ok(local_multiplicity(sys, pt)? == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::parse::parse_with_vars;

    fn sys(texts: &[&str]) -> PlaneSystem {
        let names: Vec<String> = ["y1", "y2", "y3"].iter().map(|s| s.to_string()).collect();
        PlaneSystem::new(texts.iter().map(|t| parse_with_vars(t, &names).unwrap()).collect()).unwrap()
    }

    fn pt(s: &str) -> ProjPoint {
        ProjPoint::parse(s).unwrap()
    }

    #[test]
    fn two_lines() {
        let s = sys(&["y2", "y3"]);
        let c = count_plane_points(&s, 0).unwrap();
        assert_eq!(c.distinct, 1);
        assert_eq!(c.bezout_total, Some(1));
        assert_eq!(c.mult_list, vec![FanPoint { point: pt("1,0,0"), multiplicity: 1 }]);
    }

    #[test]
    fn conic_and_cubic_with_a_fat_point() {
        let s = sys(&["y2^2 + y3^2", "y1*y2^2"]);
        let c = count_plane_points(&s, 0).unwrap();
        assert_eq!(c.distinct, 3);
        assert_eq!(c.bezout_total, Some(6));
        let mults: Vec<(String, usize)> = c.mult_list.iter().map(|f| (f.point.to_string(), f.multiplicity)).collect();
        assert_eq!(
            mults,
            vec![("[0,1,-i]".to_string(), 1), ("[0,1,i]".to_string(), 1), ("[1,0,0]".to_string(), 4)]
        );
        assert!(!is_reduced_at(&s, &pt("1,0,0")).unwrap());
    }

    #[test]
    fn six_simple_points() {
        let s = sys(&["y1^2 + y2^2 + y3^2", "y1^3 + y2^3 + y3^3"]);
        let c = count_plane_points(&s, 3).unwrap();
        assert_eq!((c.distinct, c.bezout_total), (6, Some(6)));
        let m = count_plane_points_with(&s, 3, PlaneOptions { arith: Arith::Modular, ..Default::default() }).unwrap();
        assert!(c.same_counts(&m));
    }

    #[test]
    fn local_lengths() {
        assert_eq!(local_multiplicity(&sys(&["y2", "y3"]), &pt("1,0,0")).unwrap(), 1);
        assert_eq!(local_multiplicity(&sys(&["y2^2", "y3"]), &pt("1,0,0")).unwrap(), 2);
        assert!(!is_reduced_at(&sys(&["y2^2", "y3"]), &pt("1,0,0")).unwrap());
        assert!(is_reduced_at(&sys(&["y1*y2 + y3^2", "y1^2*y3"]), &pt("1,0,0")).unwrap());
        assert_eq!(
            local_multiplicity(&sys(&["y2*y3", "y2*y1"]), &pt("0,0,1")).unwrap_err(),
            Error::PositiveDimensionalAtPoint
        );
    }

    #[test]
    fn infinite_and_empty() {
        assert!(count_plane_points(&sys(&["y1*y2", "y1*y3"]), 0).unwrap().infinite);
        assert!(count_plane_points(&sys(&["0", "y1^3 + y2^3 + y3^3"]), 0).unwrap().infinite);
        let c = count_plane_points(&sys(&["y1", "y2", "y3"]), 0).unwrap();
        assert_eq!((c.distinct, c.bezout_total, c.infinite), (0, Some(0), false));
    }
}
