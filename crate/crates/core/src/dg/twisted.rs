//! One-sided twisted complexes over a DG presentation: shifts, cones, direct sums, their Hom
//! complexes, and the DG presentation they span.
//!
//! An entry `(X, n)` stands for `X[n]`. A morphism of degree `k` from `X_j[n_j]` to `Y_i[m_i]`
//! is an element of `hom^{k + m_i - n_j}(X_j, Y_i)`; composition has no signs and the shifted
//! differential on that component is `(-1)^{m_i} d`.

use std::sync::Arc;

use serde::Serialize;

use crate::dg::presentation::{cohomology_of, signed, Cohomology, DgPresentation};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::lincat::presentation::Presentation;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwistedComplex {
    pub entries: Vec<(usize, i64)>,
    /// `q[i * m + j] ∈ hom(X_j, X_i)`; zero unless `i < j`.
    pub q: Vec<Vec<Scalar>>,
}

impl TwistedComplex {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Offsets of the blocks of `Hom(S, T)`: block `(i, j)` from `S_j` to `T_i`, `i` outer.
#[derive(Clone, Debug)]
pub struct HomLayout {
    offsets: Vec<usize>,
    sizes: Vec<usize>,
    cols: usize,
    pub total: usize,
}

impl HomLayout {
    pub fn block(&self, i: usize, j: usize) -> std::ops::Range<usize> {
        let k = i * self.cols + j;
        self.offsets[k]..self.offsets[k] + self.sizes[k]
    }
}

/// Twisted complexes over a fixed DG presentation.
#[derive(Clone)]
pub struct Pretr {
    base: Arc<DgPresentation>,
}

impl Pretr {
    pub fn new(base: Arc<DgPresentation>) -> Self {
        Pretr { base }
    }

    pub fn base(&self) -> &Arc<DgPresentation> {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    fn dim(&self, x: usize, y: usize) -> usize {
        self.base.linear.dim(x, y)
    }

    /// `X[n]` with no twisting.
    pub fn object(&self, x: usize, n: i64) -> TwistedComplex {
        TwistedComplex {
            entries: vec![(x, n)],
            q: vec![vec![self.field().zero(); self.dim(x, x)]],
        }
    }

    pub fn zero_object(&self) -> TwistedComplex {
        TwistedComplex {
            entries: Vec::new(),
            q: Vec::new(),
        }
    }

    pub fn layout(&self, s: &TwistedComplex, t: &TwistedComplex) -> HomLayout {
        let mut offsets = Vec::with_capacity(s.len() * t.len());
        let mut sizes = Vec::with_capacity(s.len() * t.len());
        let mut total = 0;
        for &(y, _) in &t.entries {
            for &(x, _) in &s.entries {
                offsets.push(total);
                let d = self.dim(x, y);
                sizes.push(d);
                total += d;
            }
        }
        HomLayout {
            offsets,
            sizes,
            cols: s.len(),
            total,
        }
    }

    /// Degree of every basis vector of `Hom(S, T)`.
    pub fn degrees(&self, s: &TwistedComplex, t: &TwistedComplex) -> Vec<i64> {
        let mut out = Vec::new();
        for &(y, m) in &t.entries {
            for &(x, n) in &s.entries {
                out.extend(self.base.degrees(x, y).iter().map(|d| d - m + n));
            }
        }
        out
    }

    pub fn zero(&self, s: &TwistedComplex, t: &TwistedComplex) -> Vec<Scalar> {
        vec![self.field().zero(); self.layout(s, t).total]
    }

    pub fn identity(&self, s: &TwistedComplex) -> Vec<Scalar> {
        let lay = self.layout(s, s);
        let mut out = vec![self.field().zero(); lay.total];
        for (i, &(x, _)) in s.entries.iter().enumerate() {
            out[lay.block(i, i)].clone_from_slice(self.base.linear.identity(x));
        }
        out
    }

    /// `g ∘ f` for `f : R → S` and `g : S → T`.
    pub fn compose(&self, r: &TwistedComplex, s: &TwistedComplex, t: &TwistedComplex, g: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let (lf, lg, lo) = (self.layout(r, s), self.layout(s, t), self.layout(r, t));
        let mut out = vec![self.field().zero(); lo.total];
        for (i, &(z, _)) in t.entries.iter().enumerate() {
            for (j, &(x, _)) in r.entries.iter().enumerate() {
                let range = lo.block(i, j);
                for (l, &(y, _)) in s.entries.iter().enumerate() {
                    let (gb, fb) = (&g[lg.block(i, l)], &f[lf.block(l, j)]);
                    if gb.iter().all(Scalar::is_zero) || fb.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    self.base.linear.compose_into((x, y, z), gb, fb, &mut out[range.clone()]);
                }
            }
        }
        out
    }

    /// `q` as an endomorphism of degree 1.
    pub fn twist(&self, s: &TwistedComplex) -> Vec<Scalar> {
        let lay = self.layout(s, s);
        let mut out = vec![self.field().zero(); lay.total];
        let m = s.len();
        for i in 0..m {
            for j in 0..m {
                out[lay.block(i, j)].clone_from_slice(&s.q[i * m + j]);
            }
        }
        out
    }

    fn shifted_d(&self, s: &TwistedComplex, t: &TwistedComplex, f: &[Scalar]) -> Vec<Scalar> {
        let lay = self.layout(s, t);
        let mut out = vec![self.field().zero(); lay.total];
        for (i, &(y, m)) in t.entries.iter().enumerate() {
            for (j, &(x, _)) in s.entries.iter().enumerate() {
                let r = lay.block(i, j);
                let d = self.base.d(x, y, &f[r.clone()]);
                let sg = signed(self.field(), m);
                for (o, v) in out[r].iter_mut().zip(d) {
                    *o = &sg * &v;
                }
            }
        }
        out
    }

    /// `D f = d f + q_T f - (-1)^k f q_S` on each homogeneous component of degree `k`.
    pub fn differential(&self, s: &TwistedComplex, t: &TwistedComplex, f: &[Scalar]) -> Vec<Scalar> {
        let field = self.field();
        let degrees = self.degrees(s, t);
        let mut out = self.shifted_d(s, t, f);
        let left = self.compose(s, t, t, &self.twist(t), f);
        let mut by_degree: std::collections::BTreeMap<i64, Vec<Scalar>> = Default::default();
        for (p, v) in f.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            by_degree.entry(degrees[p]).or_insert_with(|| vec![field.zero(); f.len()])[p] = v.clone();
        }
        let qs = self.twist(s);
        for (k, part) in by_degree {
            let right = self.compose(s, s, t, &part, &qs);
            let sg = signed(field, k);
            for (o, r) in out.iter_mut().zip(right) {
                *o = &*o - &(&sg * &r);
            }
        }
        for (o, l) in out.iter_mut().zip(left) {
            *o = &*o + &l;
        }
        out
    }

    /// Strict upper triangularity, degree-1 entries and `d q + q q = 0`.
    pub fn validate(&self, s: &TwistedComplex) -> Result<()> {
        let m = s.len();
        if s.q.len() != m * m {
            return Err(Error::Input("twisting matrix has the wrong number of entries".into()));
        }
        let degrees = self.degrees(s, s);
        let lay = self.layout(s, s);
        for i in 0..m {
            for j in 0..m {
                let (x, y) = (s.entries[j].0, s.entries[i].0);
                let block = &s.q[i * m + j];
                if block.len() != self.dim(x, y) {
                    return Err(Error::Input(format!("twisting entry ({i},{j}) has the wrong length")));
                }
                let nonzero = block.iter().any(|v| !v.is_zero());
                if nonzero && i >= j {
                    return Err(Error::Input(format!("twisting entry ({i},{j}) is not strictly upper triangular")));
                }
                for (p, v) in lay.block(i, j).zip(block) {
                    if !v.is_zero() && degrees[p] != 1 {
                        return Err(Error::Input(format!("twisting entry ({i},{j}) does not have degree 1")));
                    }
                }
            }
        }
        let q = self.twist(s);
        let dq = self.shifted_d(s, s, &q);
        let qq = self.compose(s, s, s, &q, &q);
        if dq.iter().zip(&qq).any(|(a, b)| !(a + b).is_zero()) {
            return Err(Error::Input("twisting matrix violates the Maurer–Cartan equation".into()));
        }
        Ok(())
    }

    /// `T[n]`: every shift moves by `n` and `q` picks up `(-1)^n`.
    pub fn shift(&self, s: &TwistedComplex, n: i64) -> TwistedComplex {
        let sg = signed(self.field(), n);
        TwistedComplex {
            entries: s.entries.iter().map(|&(x, k)| (x, k + n)).collect(),
            q: s.q.iter().map(|b| b.iter().map(|v| &sg * v).collect()).collect(),
        }
    }

    pub fn direct_sum(&self, parts: &[&TwistedComplex]) -> TwistedComplex {
        let entries: Vec<(usize, i64)> = parts.iter().flat_map(|p| p.entries.iter().copied()).collect();
        let m = entries.len();
        let mut q = Vec::with_capacity(m * m);
        for &(y, _) in &entries {
            for &(x, _) in &entries {
                q.push(vec![self.field().zero(); self.dim(x, y)]);
            }
        }
        let mut offset = 0;
        for p in parts {
            let k = p.len();
            for i in 0..k {
                for j in 0..k {
                    q[(offset + i) * m + offset + j] = p.q[i * k + j].clone();
                }
            }
            offset += k;
        }
        TwistedComplex { entries, q }
    }

    /// The morphism `⊕ S_b → ⊕ T_a` with component `(a, b, f)` from `S_b` to `T_a` and zero
    /// elsewhere.
    pub fn assemble(&self, sources: &[&TwistedComplex], targets: &[&TwistedComplex], parts: &[(usize, usize, Vec<Scalar>)]) -> Vec<Scalar> {
        let (s, t) = (self.direct_sum(sources), self.direct_sum(targets));
        let lay = self.layout(&s, &t);
        let offsets = |xs: &[&TwistedComplex]| {
            xs.iter()
                .scan(0, |acc, x| {
                    let o = *acc;
                    *acc += x.len();
                    Some(o)
                })
                .collect::<Vec<_>>()
        };
        let (so, to) = (offsets(sources), offsets(targets));
        let mut out = vec![self.field().zero(); lay.total];
        for (a, b, f) in parts {
            let small = self.layout(sources[*b], targets[*a]);
            for i in 0..targets[*a].len() {
                for j in 0..sources[*b].len() {
                    out[lay.block(to[*a] + i, so[*b] + j)].clone_from_slice(&f[small.block(i, j)]);
                }
            }
        }
        out
    }

    /// Whether `f : S → T` is a closed morphism of degree 0.
    pub fn is_closed_degree_zero(&self, s: &TwistedComplex, t: &TwistedComplex, f: &[Scalar]) -> bool {
        let degrees = self.degrees(s, t);
        f.iter().zip(&degrees).all(|(v, d)| v.is_zero() || *d == 0)
            && self.differential(s, t, f).iter().all(Scalar::is_zero)
    }

    /// `Cone(f)` for a closed degree-0 `f : S → T`: entries of `T` then `S[1]`, twisted by
    /// `[[q_T, f], [0, -q_S]]`.
    pub fn cone(&self, s: &TwistedComplex, t: &TwistedComplex, f: &[Scalar]) -> Result<TwistedComplex> {
        if f.len() != self.layout(s, t).total {
            return Err(Error::Input("cone: morphism has the wrong number of coordinates".into()));
        }
        if !self.is_closed_degree_zero(s, t, f) {
            return Err(Error::Input("cone: morphism is not closed of degree 0".into()));
        }
        let s1 = self.shift(s, 1);
        let mut c = self.direct_sum(&[t, &s1]);
        let lay = self.layout(s, t);
        let m = c.len();
        for i in 0..t.len() {
            for j in 0..s.len() {
                c.q[i * m + t.len() + j] = f[lay.block(i, j)].to_vec();
            }
        }
        Ok(c)
    }

    /// A basis of the closed degree-0 morphisms `S → T`.
    pub fn cycles0(&self, s: &TwistedComplex, t: &TwistedComplex) -> Vec<Vec<Scalar>> {
        self.hom_cohomology(s, t, 0).cycles
    }

    pub fn hom_cohomology(&self, s: &TwistedComplex, t: &TwistedComplex, k: i64) -> Cohomology {
        cohomology_of(self.field(), &self.degrees(s, t), &|f| self.differential(s, t, f), k)
    }

    /// `dim H^k Hom(S, T)` for every degree `k` where the Hom complex is nonzero.
    pub fn hom_cohomology_dims(&self, s: &TwistedComplex, t: &TwistedComplex) -> Vec<(i64, usize)> {
        let degrees = self.degrees(s, t);
        let (Some(&lo), Some(&hi)) = (degrees.iter().min(), degrees.iter().max()) else {
            return Vec::new();
        };
        (lo..=hi).map(|k| (k, self.hom_cohomology(s, t, k).dim())).filter(|&(_, d)| d > 0).collect()
    }

    /// Whether an isomorphism `S → T` of degree 0 exists: solves `g f = 1`, `f g = 1` for the
    /// inverse of a given closed `f`.
    pub fn inverse(&self, s: &TwistedComplex, t: &TwistedComplex, f: &[Scalar]) -> Option<Vec<Scalar>> {
        let field = self.field();
        let total = self.layout(t, s).total;
        if total == 0 {
            return (s.is_empty() && t.is_empty()).then(Vec::new);
        }
        let mut cols_left = Vec::with_capacity(total);
        for p in 0..total {
            let mut e = vec![field.zero(); total];
            e[p] = field.one();
            let gf = self.compose(s, t, s, &e, f);
            let fg = self.compose(t, s, t, f, &e);
            cols_left.push(gf.into_iter().chain(fg).collect::<Vec<_>>());
        }
        let rows = cols_left[0].len();
        let rhs: Vec<Scalar> = self.identity(s).into_iter().chain(self.identity(t)).collect();
        Matrix::from_columns(field, rows, &cols_left).solve(&rhs)
    }

    /// Presents the full DG subcategory on `objects`.
    pub fn materialize(&self, objects: &[TwistedComplex], names: &[String]) -> Result<DgPresentation> {
        let field = self.field();
        let n = objects.len();
        let mut lin = Presentation::new(field, names.to_vec());
        let layouts: Vec<Vec<HomLayout>> = objects
            .iter()
            .map(|s| objects.iter().map(|t| self.layout(s, t)).collect())
            .collect();
        for x in 0..n {
            for y in 0..n {
                lin.set_hom(x, y, (0..layouts[x][y].total).map(|p| format!("b{p}")).collect());
            }
        }
        for x in 0..n {
            lin.set_identity(x, self.identity(&objects[x]));
        }
        let unit = |dim: usize, p: usize| {
            let mut v = vec![field.zero(); dim];
            v[p] = field.one();
            v
        };
        for x in 0..n {
            for y in 0..n {
                let dxy = layouts[x][y].total;
                if dxy == 0 {
                    continue;
                }
                for z in 0..n {
                    let dyz = layouts[y][z].total;
                    for a in 0..dyz {
                        let g = unit(dyz, a);
                        for b in 0..dxy {
                            let f = unit(dxy, b);
                            let gf = self.compose(&objects[x], &objects[y], &objects[z], &g, &f);
                            let sparse: Vec<_> = gf.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                            if !sparse.is_empty() {
                                lin.set_product((x, y, z), a, b, sparse);
                            }
                        }
                    }
                }
            }
        }
        let mut dg = DgPresentation::new(lin);
        for x in 0..n {
            for y in 0..n {
                dg.set_degrees(x, y, self.degrees(&objects[x], &objects[y]))?;
                let dxy = layouts[x][y].total;
                for p in 0..dxy {
                    let d = self.differential(&objects[x], &objects[y], &unit(dxy, p));
                    dg.set_differential(x, y, p, d.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())?;
                }
            }
        }
        Ok(dg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(field: Field) -> Pretr {
        let lin = Presentation::discrete(field, &["V0", "V1", "V2"]);
        Pretr::new(Arc::new(DgPresentation::new(lin)))
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let f = Field::Prime(5);
        let p = base(f);
        let v = p.object(1, 0);
        let c = p.cone(&v, &v, &p.identity(&v)).unwrap();
        p.validate(&c).unwrap();
        assert!(p.hom_cohomology_dims(&c, &c).is_empty());
        assert_eq!(p.shift(&c, 0), c);
    }

    #[test]
    fn cone_of_zero_is_a_sum() {
        let f = Field::Prime(5);
        let p = base(f);
        let (x, y) = (p.object(0, 0), p.object(2, 0));
        let c = p.cone(&x, &y, &p.zero(&x, &y)).unwrap();
        assert_eq!(c, p.direct_sum(&[&y, &p.shift(&x, 1)]));
    }

    #[test]
    fn materialized_hull_is_a_dg_category() {
        let f = Field::Prime(5);
        let p = base(f);
        let v1 = p.object(1, 0);
        let m1 = {
            let c = p.cone(&v1, &v1, &p.identity(&v1)).unwrap();
            p.direct_sum(&[&p.object(0, 0), &c])
        };
        let objs = vec![m1.clone(), p.shift(&m1, 1), p.object(0, 0), p.shift(&p.object(1, 0), -1)];
        let names: Vec<String> = (0..objs.len()).map(|i| format!("T{i}")).collect();
        let dg = p.materialize(&objs, &names).unwrap();
        let r = dg.check().unwrap();
        assert!(r.passes(), "{:?}", &r.violations[..r.violations.len().min(5)]);
        let h = dg.h0().unwrap();
        assert_eq!(h.presentation.dim(0, 0), 1);
        assert_eq!(h.presentation.dim(0, 2), 1);
        assert!(h.presentation.validate().unwrap().passes());
    }
}
