//! Projective points and lines, Plücker coordinates, the local chart at a
//! smooth point and restrictions of an equation to a line.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactcore::{gcd_many, ExactMatrix, MultiPoly, Scalar, UniPoly};
use crate::Error;

/// A point of projective space. Equality is proportionality.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint {
    pub coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self, Error> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Invalid("the zero vector is not a projective point".into()));
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(c: &[i64]) -> Self {
        ProjPoint::new(c.iter().map(|&v| Scalar::from_int(v)).collect()).unwrap()
    }

    /// Standard basis point `e_i` of `P^(dim-1)`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut c = vec![Scalar::zero(); dim];
        c[i] = Scalar::one();
        ProjPoint { coords: c }
    }

    /// Comma-separated exact coordinates, e.g. `1,0,-1/2,i,0`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let coords: Result<Vec<Scalar>, Error> = text.split(',').map(|t| Scalar::parse(t.trim())).collect();
        ProjPoint::new(coords?)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Representative whose first nonzero coordinate is 1.
    pub fn normalized(&self) -> ProjPoint {
        let k = self.coords.iter().position(|c| !c.is_zero()).unwrap();
        let inv = self.coords[k].inv().unwrap();
        ProjPoint { coords: self.coords.iter().map(|c| c * &inv).collect() }
    }

    pub fn proportional(&self, o: &ProjPoint) -> bool {
        if self.dim() != o.dim() {
            return false;
        }
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if &self.coords[i] * &o.coords[j] != &self.coords[j] * &o.coords[i] {
                    return false;
                }
            }
        }
        true
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, o: &Self) -> bool {
        self.proportional(o)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        let parts: Vec<String> = n.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Index pairs `(i, j)`, `i < j`, in the order of the Plücker vector.
pub fn plucker_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// A line of `P^4` spanned by two points, with cached Plücker coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineP4 {
    pub span: [ProjPoint; 2],
    pub plucker: Vec<Scalar>,
}

/// `p_ij = a_i b_j - a_j b_i`.
pub fn plucker_from_span(a: &ProjPoint, b: &ProjPoint) -> Result<LineP4, Error> {
    if a.dim() != 5 || b.dim() != 5 {
        return Err(Error::Invalid("lines live in P^4: points need five coordinates".into()));
    }
    let plucker: Vec<Scalar> =
        plucker_pairs(5).iter().map(|&(i, j)| &(&a.coords[i] * &b.coords[j]) - &(&a.coords[j] * &b.coords[i])).collect();
    if plucker.iter().all(|p| p.is_zero()) {
        return Err(Error::ProportionalPoints);
    }
    Ok(LineP4 { span: [a.clone(), b.clone()], plucker })
}

impl LineP4 {
    /// `a1,...;b1,...` as accepted by the command line.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 2 {
            return Err(Error::Invalid("a line is given as two points separated by `;`".into()));
        }
        plucker_from_span(&ProjPoint::parse(parts[0])?, &ProjPoint::parse(parts[1])?)
    }

    pub fn p(&self, i: usize, j: usize) -> Scalar {
        if i == j {
            return Scalar::zero();
        }
        let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
        let k = plucker_pairs(5).iter().position(|&q| q == (a, b)).unwrap();
        if sign {
            -&self.plucker[k]
        } else {
            self.plucker[k].clone()
        }
    }

    /// The five relations `p_ij p_kl - p_ik p_jl + p_il p_jk` for `i<j<k<l`.
    pub fn grassmann_relations(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        for skip in (0..5).rev() {
            let idx: Vec<usize> = (0..5).filter(|&x| x != skip).collect();
            let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
            let v = &(&(&self.p(i, j) * &self.p(k, l)) - &(&self.p(i, k) * &self.p(j, l))) + &(&self.p(i, l) * &self.p(j, k));
            out.push(v);
        }
        out
    }

    /// Same line, possibly different span.
    pub fn same_line(&self, o: &LineP4) -> bool {
        ProjPoint { coords: self.plucker.clone() }.proportional(&ProjPoint { coords: o.plucker.clone() })
    }

    /// Does the line pass through `q`?
    pub fn contains(&self, q: &ProjPoint) -> bool {
        let m = ExactMatrix::from_rows(vec![self.span[0].coords.clone(), self.span[1].coords.clone(), q.coords.clone()]);
        m.rank() == 2
    }

    /// Do the two lines meet (or coincide)?
    pub fn meets(&self, o: &LineP4) -> bool {
        let m = ExactMatrix::from_rows(vec![
            self.span[0].coords.clone(),
            self.span[1].coords.clone(),
            o.span[0].coords.clone(),
            o.span[1].coords.clone(),
        ]);
        m.rank() < 4
    }

    /// The coordinates of `s a + t b` as linear forms in `(s, t)`.
    pub fn binary_param(&self) -> Vec<MultiPoly> {
        (0..5)
            .map(|i| MultiPoly::linear(&[self.span[0].coords[i].clone(), self.span[1].coords[i].clone()]))
            .collect()
    }

    /// The point `a + s b`, coordinates as polynomials in one variable `s`.
    pub fn affine_param(&self) -> Vec<MultiPoly> {
        (0..5)
            .map(|i| {
                &MultiPoly::constant(1, self.span[0].coords[i].clone())
                    + &MultiPoly::var(1, 0).scale(&self.span[1].coords[i])
            })
            .collect()
    }

    pub fn point_at(&self, s: &Scalar, t: &Scalar) -> ProjPoint {
        ProjPoint {
            coords: (0..5).map(|i| &(s * &self.span[0].coords[i]) + &(t * &self.span[1].coords[i])).collect(),
        }
    }
}

/// Equality is equality of lines.
impl PartialEq for LineP4 {
    fn eq(&self, o: &Self) -> bool {
        self.same_line(o)
    }
}

impl fmt::Display for LineP4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.span[0].coords.iter().map(|c| c.to_string()).collect();
        let b: Vec<String> = self.span[1].coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{};{}", a.join(","), b.join(","))
    }
}

/// Is `G(s a + t b)` identically zero?
pub fn line_on_hypersurface(g: &MultiPoly, r: &LineP4) -> bool {
    g.compose(&r.binary_param(), 2).is_zero()
}

/// The chart at a smooth point `p`: `x = M (1, y1, y2, y3, y4)` puts `p` at
/// the origin and the tangent hyperplane at `y4 = 0`, and the affine
/// equation reads `y4 + sum_i (F_i + y4 H_i)`.
#[derive(Clone, Debug)]
pub struct LocalModel {
    pub n: u32,
    pub point: ProjPoint,
    /// In `y1..y4`.
    pub affine_eq: MultiPoly,
    /// `F_2..F_n` in `y1, y2, y3`.
    pub f: Vec<MultiPoly>,
    /// `H_2..H_n` in `y1..y4`.
    pub h: Vec<MultiPoly>,
    /// Columns: `p`, three tangent directions, a transversal direction.
    pub chart: ExactMatrix,
}

pub fn normalize_chart(g: &MultiPoly, p: &ProjPoint) -> Result<LocalModel, Error> {
    if g.nvars() != 5 || p.dim() != 5 {
        return Err(Error::Invalid("expected an equation and a point in P^4".into()));
    }
    if !g.is_homogeneous() || g.is_zero() {
        return Err(Error::Invalid("the equation must be a nonzero form".into()));
    }
    if !g.eval(&p.coords).is_zero() {
        return Err(Error::NotOnHypersurface);
    }
    let grad: Vec<Scalar> = g.gradient().iter().map(|d| d.eval(&p.coords)).collect();
    let Some(m) = grad.iter().position(|c| !c.is_zero()) else {
        return Err(Error::SingularBasePoint);
    };
    let gm_inv = grad[m].inv().unwrap();
    let k = (0..5).find(|&j| j != m && !p.coords[j].is_zero()).unwrap();
    let mut cols: Vec<Vec<Scalar>> = vec![p.coords.clone()];
    for j in (0..5).filter(|&j| j != m && j != k) {
        let mut v = vec![Scalar::zero(); 5];
        v[j] = Scalar::one();
        v[m] = -&(&grad[j] * &gm_inv);
        cols.push(v);
    }
    let mut w = vec![Scalar::zero(); 5];
    w[m] = gm_inv;
    cols.push(w);
    let chart = ExactMatrix::from_rows(cols).transpose();
    chart_model(g, p, chart)
}

fn chart_model(g: &MultiPoly, p: &ProjPoint, chart: ExactMatrix) -> Result<LocalModel, Error> {
    // x_i = M_i0 + sum_j M_ij y_j in four variables.
    let subs: Vec<MultiPoly> = (0..5)
        .map(|i| {
            let mut e = MultiPoly::constant(4, chart.get(i, 0).clone());
            for j in 1..5 {
                e = &e + &MultiPoly::var(4, j - 1).scale(chart.get(i, j));
            }
            e
        })
        .collect();
    let affine_eq = g.compose(&subs, 4);
    let n = g.total_degree().unwrap();
    debug_assert!(affine_eq.constant_term().is_zero());
    debug_assert_eq!(affine_eq.homogeneous_component(1), MultiPoly::var(4, 3));
    let mut f = Vec::new();
    let mut h = Vec::new();
    for i in 2..=n {
        let gi = affine_eq.homogeneous_component(i);
        let fi4 = gi.partial_eval(3, &Scalar::zero());
        let hi = (&gi - &fi4).divide_by_var(3).unwrap();
        f.push(fi4.remap(3, &[0, 1, 2, usize::MAX]));
        h.push(hi);
    }
    Ok(LocalModel { n, point: p.clone(), affine_eq, f, h, chart })
}

impl LocalModel {
    /// The fan point `(y1 : y2 : y3)` of a line through the base point, or
    /// `None` when the line is not tangent there.
    pub fn fan_point(&self, r: &LineP4) -> Result<Option<ProjPoint>, Error> {
        if !r.contains(&self.point) {
            return Err(Error::Invalid("the line does not pass through the base point".into()));
        }
        let other = if r.span[0].proportional(&self.point) { &r.span[1] } else { &r.span[0] };
        let inv = self.chart.inverse()?;
        let y = inv.mul_vec(&other.coords);
        if !y[4].is_zero() {
            return Ok(None);
        }
        Ok(Some(ProjPoint::new(y[1..4].to_vec())?))
    }

    /// The line through the base point in the direction of a fan point.
    pub fn line_of(&self, q: &ProjPoint) -> Result<LineP4, Error> {
        let v = vec![Scalar::zero(), q.coords[0].clone(), q.coords[1].clone(), q.coords[2].clone(), Scalar::zero()];
        let dir = ProjPoint::new(self.chart.mul_vec(&v))?;
        plucker_from_span(&self.point, &dir)
    }
}

/// Partial derivatives of `G` along `a + s b`, and the length of the
/// common zero scheme of the binary forms (`None`: the line lies in the
/// singular locus).
#[derive(Clone, Debug)]
pub struct GradientRestriction {
    pub partials: Vec<UniPoly>,
    pub gcd_degree: Option<usize>,
}

pub fn restrict_gradient_to_line(g: &MultiPoly, r: &LineP4) -> Result<GradientRestriction, Error> {
    if !line_on_hypersurface(g, r) {
        return Err(Error::LineNotOnHypersurface);
    }
    let param = r.binary_param();
    let forms: Vec<MultiPoly> = g.gradient().iter().map(|d| d.compose(&param, 2)).collect();
    let partials: Vec<UniPoly> =
        forms.iter().map(|f| f.partial_eval(0, &Scalar::one()).to_unipoly(1).unwrap()).collect();
    let nonzero: Vec<&MultiPoly> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(GradientRestriction { partials, gcd_degree: None });
    }
    // Roots of the binary forms: those with s != 0 via the chart s = 1, and
    // the point s = 0 counted by the common power of s.
    let at_t: Vec<UniPoly> = partials.iter().filter(|u| !u.is_zero()).cloned().collect();
    let finite = gcd_many(&at_t)?.degree().unwrap();
    let infinite = nonzero.iter().map(|f| f.terms().map(|(m, _)| m.exp(0)).min().unwrap() as usize).min().unwrap();
    Ok(GradientRestriction { partials, gcd_degree: Some(finite + infinite) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::parse_polynomial;

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(c)
    }

    #[test]
    fn plucker_basics() {
        let l = plucker_from_span(&pt(&[1, 0, 0, 0, 0]), &pt(&[0, 1, 0, 0, 0])).unwrap();
        assert_eq!(l.p(0, 1), Scalar::one());
        assert!(l.plucker.iter().skip(1).all(|p| p.is_zero()));
        assert_eq!(
            plucker_from_span(&pt(&[1, 0, 0, 0, 0]), &pt(&[2, 0, 0, 0, 0])).unwrap_err(),
            Error::ProportionalPoints
        );
        let m = plucker_from_span(&pt(&[1, 2, -3, 4, 5]), &pt(&[0, 7, 1, -1, 2])).unwrap();
        assert!(m.grassmann_relations().iter().all(|r| r.is_zero()));
    }

    #[test]
    fn lines_on_hypersurfaces() {
        let g = parse_polynomial("x4*x0^2 + x0*x1*x2 + x1^2*x3").unwrap();
        let r = LineP4::parse("1,0,0,0,0;0,1,0,0,0").unwrap();
        assert!(line_on_hypersurface(&g, &r));
        let s = LineP4::parse("1,0,0,0,0;0,0,0,0,1").unwrap();
        assert!(!line_on_hypersurface(&g, &s));
    }

    #[test]
    fn chart_at_a_point_of_a_quadric() {
        let g = parse_polynomial("y4 + y1^2 - y2^2").unwrap();
        let m = normalize_chart(&g, &pt(&[1, 0, 0, 0, 0])).unwrap();
        assert_eq!(m.f.len(), 1);
        assert_eq!(m.f[0], parse_polynomial("x0^2 - x1^2").unwrap().remap(3, &[0, 1, 2, usize::MAX, usize::MAX]));
        assert!(matches!(normalize_chart(&g, &pt(&[1, 0, 0, 0, 1])), Err(Error::NotOnHypersurface)));
        let cone = parse_polynomial("x1^2 + x2^2").unwrap();
        assert_eq!(normalize_chart(&cone, &pt(&[1, 0, 0, 0, 0])).unwrap_err(), Error::SingularBasePoint);
    }

    #[test]
    fn gradient_along_a_line() {
        let g = parse_polynomial("x4*x0^2 + x0*x1*x2 + x1^2*x3").unwrap();
        let r = LineP4::parse("1,0,0,0,0;0,1,0,0,0").unwrap();
        let gr = restrict_gradient_to_line(&g, &r).unwrap();
        let expect = [vec![], vec![], vec![0, 1], vec![0, 0, 1], vec![1]];
        for (u, e) in gr.partials.iter().zip(expect) {
            assert_eq!(*u, UniPoly::from_ints(&e));
        }
        assert_eq!(gr.gcd_degree, Some(0));
    }
}
