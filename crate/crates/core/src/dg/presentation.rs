//! Finite DG categories: a linear presentation whose basis vectors carry degrees, with a
//! degree `+1` differential on every Hom space.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::lincat::presentation::{Presentation, SparseVec, Violation};
use crate::matrix::{coordinates, Matrix};

#[derive(Clone, Debug)]
pub struct DgPresentation {
    pub linear: Presentation,
    /// `degrees[x * n + y][a]` is the degree of basis vector `a` of `hom(x, y)`.
    degrees: Vec<Vec<i64>>,
    /// `differential[x * n + y][a] = d(e_a)`.
    differential: Vec<Vec<SparseVec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DgViolation {
    Linear(Violation),
    /// A product of basis vectors has a component of the wrong degree.
    Grading { objects: [usize; 3], basis: [usize; 2] },
    DifferentialDegree { objects: [usize; 2], basis: usize },
    SquareNonzero { objects: [usize; 2], basis: usize },
    Leibniz { objects: [usize; 3], basis: [usize; 2] },
    IdentityNotClosed(usize),
    IdentityDegree(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct DgReport {
    pub checked: usize,
    pub violations: Vec<DgViolation>,
}

impl DgReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn signed(field: Field, k: i64) -> Scalar {
    field.from_i64(sign(k))
}

impl DgPresentation {
    /// Every basis vector in degree 0, zero differential.
    pub fn new(linear: Presentation) -> Self {
        let n = linear.num_objects();
        let mut degrees = Vec::with_capacity(n * n);
        let mut differential = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                degrees.push(vec![0; linear.dim(x, y)]);
                differential.push(vec![Vec::new(); linear.dim(x, y)]);
            }
        }
        DgPresentation {
            linear,
            degrees,
            differential,
        }
    }

    pub fn field(&self) -> Field {
        self.linear.field()
    }

    pub fn num_objects(&self) -> usize {
        self.linear.num_objects()
    }

    fn key(&self, x: usize, y: usize) -> usize {
        x * self.num_objects() + y
    }

    pub fn set_degrees(&mut self, x: usize, y: usize, degrees: Vec<i64>) -> Result<()> {
        if degrees.len() != self.linear.dim(x, y) {
            return Err(Error::Input(format!("hom({x},{y}) needs {} degrees", self.linear.dim(x, y))));
        }
        let k = self.key(x, y);
        self.degrees[k] = degrees;
        Ok(())
    }

    pub fn set_differential(&mut self, x: usize, y: usize, a: usize, image: SparseVec) -> Result<()> {
        let d = self.linear.dim(x, y);
        if a >= d || image.iter().any(|(i, _)| *i >= d) {
            return Err(Error::Input(format!("differential on hom({x},{y}) out of range")));
        }
        let k = self.key(x, y);
        self.differential[k][a] = image.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        Ok(())
    }

    pub fn degrees(&self, x: usize, y: usize) -> &[i64] {
        &self.degrees[self.key(x, y)]
    }

    /// `d` on `hom(x, y)` in coordinates.
    pub fn d(&self, x: usize, y: usize, f: &[Scalar]) -> Vec<Scalar> {
        let field = self.field();
        let mut out = vec![field.zero(); f.len()];
        for (a, fa) in f.iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            for (i, s) in &self.differential[self.key(x, y)][a] {
                out[*i] = &out[*i] + &(fa * s);
            }
        }
        out
    }

    /// Basis indices of `hom(x, y)` in degree `k`.
    pub fn degree_part(&self, x: usize, y: usize, k: i64) -> Vec<usize> {
        (0..self.linear.dim(x, y)).filter(|&a| self.degrees(x, y)[a] == k).collect()
    }

    fn unit(&self, dim: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); dim];
        v[i] = self.field().one();
        v
    }

    /// The degree of a nonzero coordinate vector, if it is homogeneous.
    pub fn homogeneous_degree(&self, x: usize, y: usize, f: &[Scalar]) -> Option<i64> {
        let mut deg = None;
        for (a, s) in f.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let k = self.degrees(x, y)[a];
            match deg {
                None => deg = Some(k),
                Some(d) if d != k => return None,
                _ => {}
            }
        }
        deg
    }

    /// Associativity and units, grading of products, `deg d = 1`, `d² = 0`, the graded Leibniz
    /// rule on every composable basis pair, and closed degree-0 identities.
    pub fn check(&self) -> Result<DgReport> {
        let lin = self.linear.validate()?;
        let mut report = DgReport {
            checked: lin.checked,
            violations: lin.violations.into_iter().map(DgViolation::Linear).collect(),
        };
        let n = self.num_objects();
        let field = self.field();
        for x in 0..n {
            let id = self.linear.identity(x);
            report.checked += 2;
            if id.iter().any(|s| !s.is_zero()) && self.homogeneous_degree(x, x, id) != Some(0) {
                report.violations.push(DgViolation::IdentityDegree(x));
            }
            if self.d(x, x, id).iter().any(|s| !s.is_zero()) {
                report.violations.push(DgViolation::IdentityNotClosed(x));
            }
            for y in 0..n {
                let dim = self.linear.dim(x, y);
                for a in 0..dim {
                    let e = self.unit(dim, a);
                    let de = self.d(x, y, &e);
                    report.checked += 2;
                    let deg_ok = de.iter().all(|s| s.is_zero())
                        || self.homogeneous_degree(x, y, &de) == Some(self.degrees(x, y)[a] + 1);
                    if !deg_ok {
                        report.violations.push(DgViolation::DifferentialDegree { objects: [x, y], basis: a });
                    }
                    if self.d(x, y, &de).iter().any(|s| !s.is_zero()) {
                        report.violations.push(DgViolation::SquareNonzero { objects: [x, y], basis: a });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let d1 = self.linear.dim(x, y);
                if d1 == 0 {
                    continue;
                }
                for z in 0..n {
                    let d2 = self.linear.dim(y, z);
                    for b in 0..d1 {
                        let f = self.unit(d1, b);
                        let df = self.d(x, y, &f);
                        for a in 0..d2 {
                            let g = self.unit(d2, a);
                            let gf = self.linear.compose((x, y, z), &g, &f);
                            report.checked += 2;
                            let expected = self.degrees(y, z)[a] + self.degrees(x, y)[b];
                            if gf.iter().any(|s| !s.is_zero()) && self.homogeneous_degree(x, z, &gf) != Some(expected) {
                                report.violations.push(DgViolation::Grading { objects: [x, y, z], basis: [a, b] });
                            }
                            let lhs = self.d(x, z, &gf);
                            let mut rhs = self.linear.compose((x, y, z), &self.d(y, z, &g), &f);
                            let s = signed(field, self.degrees(y, z)[a]);
                            let right = self.linear.compose((x, y, z), &g, &df);
                            for (r, t) in rhs.iter_mut().zip(&right) {
                                *r = &*r + &(&s * t);
                            }
                            if lhs != rhs {
                                report.violations.push(DgViolation::Leibniz { objects: [x, y, z], basis: [a, b] });
                            }
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    /// `Z^k`, `B^k` and a choice of representatives for `H^k` of `hom(x, y)`, in coordinates of
    /// the whole Hom space.
    pub fn cohomology(&self, x: usize, y: usize, k: i64) -> Cohomology {
        cohomology_of(self.field(), self.degrees(x, y), &|f| self.d(x, y, f), k)
    }

    /// Degrees in which some Hom space has a basis vector.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let all = self.degrees.iter().flatten();
        Some((*all.clone().min()?, *all.max()?))
    }

    /// The homotopy category: `Hom = H⁰`, with composition of representatives.
    pub fn h0(&self) -> Result<H0> {
        let n = self.num_objects();
        let field = self.field();
        let mut classes = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                classes.push(self.cohomology(x, y, 0));
            }
        }
        let mut pres = Presentation::new(field, self.linear.object_names().to_vec());
        for x in 0..n {
            for y in 0..n {
                let c = &classes[x * n + y];
                pres.set_hom(x, y, (0..c.representatives.len()).map(|i| format!("[{i}]")).collect());
            }
        }
        for x in 0..n {
            let id = classes[x * n + x]
                .class(self.linear.identity(x))
                .ok_or_else(|| Error::Structural(format!("identity of object {x} is not a cycle")))?;
            pres.set_identity(x, id);
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (cxy, cyz) = (&classes[x * n + y], &classes[y * n + z]);
                    if cxy.representatives.is_empty() || cyz.representatives.is_empty() {
                        continue;
                    }
                    for (a, g) in cyz.representatives.iter().enumerate() {
                        for (b, f) in cxy.representatives.iter().enumerate() {
                            let gf = self.linear.compose((x, y, z), g, f);
                            let c = classes[x * n + z]
                                .class(&gf)
                                .ok_or_else(|| Error::Structural("product of cycles is not a cycle".into()))?;
                            let sparse = c.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect();
                            pres.set_product((x, y, z), a, b, sparse);
                        }
                    }
                }
            }
        }
        Ok(H0 {
            presentation: pres,
            classes,
        })
    }
}

fn combine(field: Field, dim: usize, coeffs: &[Scalar], vecs: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); dim];
    for (c, v) in coeffs.iter().zip(vecs) {
        if c.is_zero() {
            continue;
        }
        for (o, s) in out.iter_mut().zip(v) {
            *o = &*o + &(c * s);
        }
    }
    out
}

fn unit_vector(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

/// Degree-`k` cohomology of a complex given by the degrees of its basis vectors and a
/// differential in coordinates.
pub fn cohomology_of(field: Field, degrees: &[i64], d: &dyn Fn(&[Scalar]) -> Vec<Scalar>, k: i64) -> Cohomology {
    let dim = degrees.len();
    let cochains: Vec<Vec<Scalar>> = (0..dim).filter(|&a| degrees[a] == k).map(|a| unit_vector(field, dim, a)).collect();
    let cycles = if cochains.is_empty() {
        Vec::new()
    } else {
        let images: Vec<Vec<Scalar>> = cochains.iter().map(|c| d(c)).collect();
        Matrix::from_columns(field, dim, &images)
            .nullspace()
            .into_iter()
            .map(|coeffs| combine(field, dim, &coeffs, &cochains))
            .collect()
    };
    let below: Vec<Vec<Scalar>> = (0..dim).filter(|&a| degrees[a] == k - 1).map(|a| d(&unit_vector(field, dim, a))).collect();
    let boundaries = Matrix::span_basis(field, &below);
    Cohomology::new(field, cycles, boundaries)
}

/// Cycles, boundaries and a complement of the boundaries inside the cycles.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub cycles: Vec<Vec<Scalar>>,
    pub boundaries: Vec<Vec<Scalar>>,
    pub representatives: Vec<Vec<Scalar>>,
    field: Field,
}

impl Cohomology {
    fn new(field: Field, cycles: Vec<Vec<Scalar>>, boundaries: Vec<Vec<Scalar>>) -> Self {
        let mut spanned = boundaries.clone();
        let mut representatives = Vec::new();
        for z in &cycles {
            let mut trial = spanned.clone();
            trial.push(z.clone());
            if Matrix::span_basis(field, &trial).len() > Matrix::span_basis(field, &spanned).len() {
                spanned = trial;
                representatives.push(z.clone());
            }
        }
        Cohomology {
            cycles,
            boundaries,
            representatives,
            field,
        }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of a cycle in the chosen representatives; `None` if `z` is
    /// not a cycle of this degree.
    pub fn class(&self, z: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut basis = self.representatives.clone();
        basis.extend(self.boundaries.iter().cloned());
        if basis.is_empty() {
            return z.iter().all(Scalar::is_zero).then(Vec::new);
        }
        let c = coordinates(self.field, &basis, z)?;
        Some(c[..self.representatives.len()].to_vec())
    }
}

/// The homotopy category together with the cohomology data used to build it.
#[derive(Clone, Debug)]
pub struct H0 {
    pub presentation: Presentation,
    /// `classes[x * n + y]` describes `H⁰ hom(x, y)`.
    pub classes: Vec<Cohomology>,
}

impl H0 {
    pub fn class(&self, x: usize, y: usize, z: &[Scalar]) -> Option<Vec<Scalar>> {
        self.classes[x * self.presentation.num_objects() + y].class(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers(field: Field, broken: bool) -> DgPresentation {
        let mut p = Presentation::new(field, vec!["X".into()]);
        p.set_hom(0, 0, vec!["1".into(), "x".into()]);
        p.set_identity(0, vec![field.one(), field.zero()]);
        p.set_product((0, 0, 0), 0, 0, vec![(0, field.one())]);
        p.set_product((0, 0, 0), 0, 1, vec![(1, field.one())]);
        p.set_product((0, 0, 0), 1, 0, vec![(1, field.one())]);
        let mut dg = DgPresentation::new(p);
        dg.set_degrees(0, 0, vec![0, 1]).unwrap();
        if broken {
            dg.set_differential(0, 0, 0, vec![(1, field.one())]).unwrap();
        }
        dg
    }

    #[test]
    fn ground_field_passes() {
        let dg = DgPresentation::new(Presentation::ground_field(Field::Prime(5)));
        assert!(dg.check().unwrap().passes());
        assert_eq!(dg.h0().unwrap().presentation.dim(0, 0), 1);
    }

    #[test]
    fn dual_numbers_in_degree_one() {
        let f = Field::Prime(5);
        assert!(dual_numbers(f, false).check().unwrap().passes());
        let r = dual_numbers(f, true).check().unwrap();
        assert!(r.violations.contains(&DgViolation::IdentityNotClosed(0)));
    }

    #[test]
    fn contractible_hom_has_zero_h0() {
        let f = Field::Prime(5);
        let mut p = Presentation::new(f, vec!["X".into(), "Y".into()]);
        p.set_hom(0, 0, vec!["1".into()]);
        p.set_hom(1, 1, vec!["1".into()]);
        p.set_identity(0, vec![f.one()]);
        p.set_identity(1, vec![f.one()]);
        p.set_product((0, 0, 0), 0, 0, vec![(0, f.one())]);
        p.set_product((1, 1, 1), 0, 0, vec![(0, f.one())]);
        p.set_hom(0, 1, vec!["u".into(), "v".into()]);
        p.set_product((0, 1, 1), 0, 0, vec![(0, f.one())]);
        p.set_product((0, 1, 1), 0, 1, vec![(1, f.one())]);
        p.set_product((0, 0, 1), 0, 0, vec![(0, f.one())]);
        p.set_product((0, 0, 1), 1, 0, vec![(1, f.one())]);
        let mut dg = DgPresentation::new(p);
        dg.set_degrees(0, 1, vec![-1, 0]).unwrap();
        dg.set_differential(0, 1, 0, vec![(1, f.one())]).unwrap();
        assert!(dg.check().unwrap().passes());
        let h = dg.h0().unwrap();
        assert_eq!(h.presentation.dim(0, 1), 0);
        assert_eq!(h.presentation.dim(0, 0), 1);
        assert!(h.presentation.validate().unwrap().passes());
    }
}
