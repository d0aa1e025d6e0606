//! Strict group actions on DG presentations, extended to twisted complexes, and equivariant
//! DG objects with their Hom subcomplexes.

use std::sync::Arc;

use crate::dg::presentation::DgPresentation;
use crate::dg::twisted::{Pretr, TwistedComplex};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::group::Group;
use crate::lincat::functor::CheckReport;
use crate::lincat::presentation::Presentation;
use crate::matrix::{coordinates, Matrix};
use crate::search::{enumerate_coefficients, Budget, Enumeration};

/// `φ_g` permutes objects (`perm[g][x] = g·x`) and maps `hom(x, y) → hom(gx, gy)` by
/// `maps[g][x * n + y]`; coherence maps are identities.
#[derive(Clone, Debug)]
pub struct DgAction {
    group: Group,
    perm: Vec<Vec<usize>>,
    maps: Vec<Vec<Matrix>>,
    n: usize,
}

impl DgAction {
    /// Sends the `k`-th basis vector of `hom(x, y)` to the `k`-th of `hom(gx, gy)`.
    pub fn from_permutation(base: &DgPresentation, group: Group, perm: Vec<Vec<usize>>) -> Result<Self> {
        group.require_invertible_order(base.field())?;
        let n = base.num_objects();
        if perm.len() != group.order() || perm.iter().any(|p| p.len() != n || p.iter().any(|&x| x >= n)) {
            return Err(Error::Input("permutation table has the wrong shape".into()));
        }
        let mut maps = Vec::new();
        for p in &perm {
            let mut per_g = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    let d = base.linear.dim(x, y);
                    if d != base.linear.dim(p[x], p[y]) {
                        return Err(Error::Input(format!("permutation does not preserve dim hom({x},{y})")));
                    }
                    per_g.push(Matrix::identity(base.field(), d));
                }
            }
            maps.push(per_g);
        }
        Ok(DgAction { group, perm, maps, n })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn object(&self, g: usize, x: usize) -> usize {
        self.perm[g][x]
    }

    pub fn map(&self, g: usize, x: usize, y: usize, f: &[Scalar]) -> Vec<Scalar> {
        self.maps[g][x * self.n + y].apply(f)
    }

    /// Each `φ_g` preserves identities, composition, degrees and `d`, and `φ_g φ_h = φ_{hg}`.
    pub fn check(&self, base: &DgPresentation) -> Result<CheckReport> {
        let mut report = CheckReport::default();
        let field = base.field();
        let n = self.n;
        let unit = |d: usize, i: usize| {
            let mut v = vec![field.zero(); d];
            v[i] = field.one();
            v
        };
        for g in self.group.elements() {
            for h in self.group.elements() {
                let hg = self.group.mul(h, g);
                for x in 0..n {
                    let same = self.object(g, self.object(h, x)) == self.object(hg, x);
                    report.record(same, || format!("φ_{g}φ_{h} ≠ φ_{hg} on object {x}"));
                    for y in 0..n {
                        for a in 0..base.linear.dim(x, y) {
                            let e = unit(base.linear.dim(x, y), a);
                            let two = self.map(g, self.object(h, x), self.object(h, y), &self.map(h, x, y, &e));
                            report.record(two == self.map(hg, x, y, &e), || format!("φ_{g}φ_{h} ≠ φ_{hg} on hom({x},{y})"));
                        }
                    }
                }
            }
            for x in 0..n {
                let gx = self.object(g, x);
                let id = self.map(g, x, x, base.linear.identity(x));
                report.record(id == base.linear.identity(gx), || format!("φ_{g} does not preserve the identity of {x}"));
                for y in 0..n {
                    let gy = self.object(g, y);
                    let d = base.linear.dim(x, y);
                    for a in 0..d {
                        let e = unit(d, a);
                        let img = self.map(g, x, y, &e);
                        let deg = base.degrees(x, y)[a];
                        let deg_ok = img.iter().all(Scalar::is_zero) || base.homogeneous_degree(gx, gy, &img) == Some(deg);
                        report.record(deg_ok, || format!("φ_{g} changes degrees on hom({x},{y})"));
                        let chain = self.map(g, x, y, &base.d(x, y, &e)) == base.d(gx, gy, &img);
                        report.record(chain, || format!("φ_{g} does not commute with d on hom({x},{y})"));
                        for z in 0..n {
                            let gz = self.object(g, z);
                            for b in 0..base.linear.dim(y, z) {
                                let u = unit(base.linear.dim(y, z), b);
                                let lhs = self.map(g, x, z, &base.linear.compose((x, y, z), &u, &e));
                                let rhs = base.linear.compose((gx, gy, gz), &self.map(g, y, z, &u), &img);
                                report.record(lhs == rhs, || format!("φ_{g} does not preserve composition at ({x},{y},{z})"));
                            }
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    pub fn phi(&self, g: usize, t: &TwistedComplex) -> TwistedComplex {
        let m = t.len();
        let mut q = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                let (x, y) = (t.entries[j].0, t.entries[i].0);
                q.push(self.map(g, x, y, &t.q[i * m + j]));
            }
        }
        TwistedComplex {
            entries: t.entries.iter().map(|&(x, n)| (self.object(g, x), n)).collect(),
            q,
        }
    }

    /// `φ_g` on a morphism `S → T` of twisted complexes, blockwise.
    pub fn phi_mor(&self, pretr: &Pretr, g: usize, s: &TwistedComplex, t: &TwistedComplex, f: &[Scalar]) -> Vec<Scalar> {
        let lay = pretr.layout(s, t);
        let mut out = Vec::with_capacity(f.len());
        for (i, &(y, _)) in t.entries.iter().enumerate() {
            for (j, &(x, _)) in s.entries.iter().enumerate() {
                out.extend(self.map(g, x, y, &f[lay.block(i, j)]));
            }
        }
        out
    }
}

/// A twisted complex with closed degree-0 isomorphisms `θ_g : T → φ_g T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DgEquivariant {
    pub complex: TwistedComplex,
    pub thetas: Vec<Vec<Scalar>>,
}

/// Twisted complexes with an action, and the equivariant constructions on them.
#[derive(Clone)]
pub struct EquivariantPretr {
    pub pretr: Pretr,
    pub action: Arc<DgAction>,
}

impl EquivariantPretr {
    pub fn new(pretr: Pretr, action: Arc<DgAction>) -> Self {
        EquivariantPretr { pretr, action }
    }

    /// Closedness, degree 0, invertibility, `θ_e = 1` and `θ_{hg} = φ_g(θ_h) ∘ θ_g`.
    pub fn check_structure(&self, t: &TwistedComplex, thetas: &[Vec<Scalar>]) -> Result<CheckReport> {
        let group = self.action.group();
        if thetas.len() != group.order() {
            return Err(Error::Input("one structure map per group element is required".into()));
        }
        let p = &self.pretr;
        let mut report = CheckReport::default();
        let targets: Vec<TwistedComplex> = group.elements().map(|g| self.action.phi(g, t)).collect();
        for g in group.elements() {
            if thetas[g].len() != p.layout(t, &targets[g]).total {
                return Err(Error::Input(format!("θ_{g} has the wrong number of coordinates")));
            }
            report.record(p.is_closed_degree_zero(t, &targets[g], &thetas[g]), || format!("θ_{g} is not closed of degree 0"));
            report.record(p.inverse(t, &targets[g], &thetas[g]).is_some(), || format!("θ_{g} is not invertible"));
        }
        report.record(thetas[group.identity()] == p.identity(t), || "θ_e ≠ 1".into());
        for g in group.elements() {
            for h in group.elements() {
                let hg = group.mul(h, g);
                let moved = self.action.phi_mor(p, g, t, &targets[h], &thetas[h]);
                let lhs = p.compose(t, &targets[g], &targets[hg], &moved, &thetas[g]);
                report.record(lhs == thetas[hg], || format!("θ_{{{h}{g}}} ≠ φ_{g}(θ_{h}) θ_{g}"));
            }
        }
        Ok(report)
    }

    /// Every equivariant structure on `t`: values on generators are enumerated over the closed
    /// degree-0 morphisms `T → φ_s T`, propagated, and checked.
    pub fn structures(&self, t: &TwistedComplex, budget: Budget) -> Result<Enumeration<DgEquivariant>> {
        let group = self.action.group();
        let gens = group.generators();
        let p = &self.pretr;
        let targets: Vec<TwistedComplex> = group.elements().map(|g| self.action.phi(g, t)).collect();
        let bases: Vec<Vec<Vec<Scalar>>> = gens.iter().map(|&s| p.cycles0(t, &targets[s])).collect();
        let total: usize = bases.iter().map(Vec::len).sum();
        let field = p.field();
        let lens: Vec<usize> = gens.iter().map(|&s| p.layout(t, &targets[s]).total).collect();
        enumerate_coefficients(field, total, budget, |coeffs| {
            let mut thetas: Vec<Option<Vec<Scalar>>> = vec![None; group.order()];
            thetas[group.identity()] = Some(p.identity(t));
            let mut offset = 0;
            let mut on_gens = Vec::new();
            for (k, b) in bases.iter().enumerate() {
                let mut v = vec![field.zero(); lens[k]];
                for (c, vec) in coeffs[offset..offset + b.len()].iter().zip(b) {
                    for (o, x) in v.iter_mut().zip(vec) {
                        *o = &*o + &(c * x);
                    }
                }
                offset += b.len();
                on_gens.push(v);
            }
            let mut frontier = vec![group.identity()];
            while let Some(h) = frontier.pop() {
                for (k, &s) in gens.iter().enumerate() {
                    let hs = group.mul(h, s);
                    let th = thetas[h].clone().expect("assigned");
                    let moved = self.action.phi_mor(p, s, t, &targets[h], &th);
                    let v = p.compose(t, &targets[s], &targets[hs], &moved, &on_gens[k]);
                    match &thetas[hs] {
                        Some(w) if *w != v => return Ok(None),
                        Some(_) => {}
                        None => {
                            thetas[hs] = Some(v);
                            frontier.push(hs);
                        }
                    }
                }
            }
            let Some(thetas) = thetas.into_iter().collect::<Option<Vec<_>>>() else {
                return Ok(None);
            };
            Ok(self.check_structure(t, &thetas)?.passes().then(|| DgEquivariant {
                complex: t.clone(),
                thetas,
            }))
        })
    }

    /// `p_* T = (⊕_h φ_h T, ξ)` where the `(h, hg)` block of `ξ_g` is the identity.
    pub fn induce(&self, t: &TwistedComplex) -> DgEquivariant {
        let group = self.action.group();
        let p = &self.pretr;
        let parts: Vec<TwistedComplex> = group.elements().map(|h| self.action.phi(h, t)).collect();
        let refs: Vec<&TwistedComplex> = parts.iter().collect();
        let sum = p.direct_sum(&refs);
        let thetas = group
            .elements()
            .map(|g| {
                let moved: Vec<TwistedComplex> = parts.iter().map(|x| self.action.phi(g, x)).collect();
                let mrefs: Vec<&TwistedComplex> = moved.iter().collect();
                let blocks: Vec<(usize, usize, Vec<Scalar>)> =
                    group.elements().map(|h| (h, group.mul(h, g), p.identity(&parts[group.mul(h, g)]))).collect();
                p.assemble(&refs, &mrefs, &blocks)
            })
            .collect();
        DgEquivariant { complex: sum, thetas }
    }

    /// `φ_g(f) ∘ θ^A_g = θ^B_g ∘ f` for every `g`.
    pub fn is_equivariant_mor(&self, a: &DgEquivariant, b: &DgEquivariant, f: &[Scalar]) -> bool {
        let p = &self.pretr;
        let (s, t) = (&a.complex, &b.complex);
        self.action.group().elements().all(|g| {
            let (gs, gt) = (self.action.phi(g, s), self.action.phi(g, t));
            p.compose(s, &gs, &gt, &self.action.phi_mor(p, g, s, t, f), &a.thetas[g]) == p.compose(s, t, &gt, &b.thetas[g], f)
        })
    }

    /// The unit `η : A → p_* p^* A` and `ε' : p_* p^* A → A` built from the structure maps,
    /// checked to be closed equivariant maps of degree 0 with `ε' η = |G|`.
    pub fn check_split_unit(&self, a: &DgEquivariant) -> Result<CheckReport> {
        let p = &self.pretr;
        let group = self.action.group();
        let t = &a.complex;
        let ind = self.induce(t);
        let parts: Vec<TwistedComplex> = group.elements().map(|h| self.action.phi(h, t)).collect();
        let refs: Vec<&TwistedComplex> = parts.iter().collect();
        let eta = p.assemble(&[t], &refs, &group.elements().map(|h| (h, 0, a.thetas[h].clone())).collect::<Vec<_>>());
        let mut inverses = Vec::new();
        for h in group.elements() {
            let inv = p
                .inverse(t, &parts[h], &a.thetas[h])
                .ok_or_else(|| Error::Input(format!("θ_{h} is not invertible")))?;
            inverses.push((0, h, inv));
        }
        let eps = p.assemble(&refs, &[t], &inverses);
        let mut report = CheckReport::default();
        report.record(p.is_closed_degree_zero(t, &ind.complex, &eta), || "η is not closed of degree 0".into());
        report.record(p.is_closed_degree_zero(&ind.complex, t, &eps), || "ε' is not closed of degree 0".into());
        report.record(self.is_equivariant_mor(a, &ind, &eta), || "η is not equivariant".into());
        report.record(self.is_equivariant_mor(&ind, a, &eps), || "ε' is not equivariant".into());
        let order = p.field().from_i64(group.order() as i64);
        let expected: Vec<Scalar> = p.identity(t).iter().map(|v| &order * v).collect();
        report.record(p.compose(t, &ind.complex, t, &eps, &eta) == expected, || "ε' η ≠ |G|".into());
        Ok(report)
    }

    /// A homogeneous basis of the subcomplex of `Hom(A, B)` of morphisms commuting with the
    /// structure maps, with the degree of each basis vector.
    pub fn hom(&self, a: &DgEquivariant, b: &DgEquivariant) -> Vec<(i64, Vec<Scalar>)> {
        let p = &self.pretr;
        let field = p.field();
        let group = self.action.group();
        let (s, t) = (&a.complex, &b.complex);
        let degrees = p.degrees(s, t);
        let dim = degrees.len();
        let mut distinct: Vec<i64> = degrees.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let mut out = Vec::new();
        for k in distinct {
            let part: Vec<usize> = (0..dim).filter(|&i| degrees[i] == k).collect();
            let cols: Vec<Vec<Scalar>> = part
                .iter()
                .map(|&i| {
                    let mut e = vec![field.zero(); dim];
                    e[i] = field.one();
                    let mut col = Vec::new();
                    for g in group.elements() {
                        let (gs, gt) = (self.action.phi(g, s), self.action.phi(g, t));
                        let l = p.compose(s, &gs, &gt, &self.action.phi_mor(p, g, s, t, &e), &a.thetas[g]);
                        let r = p.compose(s, t, &gt, &b.thetas[g], &e);
                        col.extend(l.into_iter().zip(r).map(|(x, y)| &x - &y));
                    }
                    col
                })
                .collect();
            let rows = cols.first().map_or(0, Vec::len);
            let null = if rows == 0 {
                (0..part.len())
                    .map(|i| {
                        let mut c = vec![field.zero(); part.len()];
                        c[i] = field.one();
                        c
                    })
                    .collect()
            } else {
                Matrix::from_columns(field, rows, &cols).nullspace()
            };
            for c in null {
                let mut v = vec![field.zero(); dim];
                for (coef, &i) in c.iter().zip(&part) {
                    v[i] = coef.clone();
                }
                out.push((k, v));
            }
        }
        out
    }

    /// Presents the full DG subcategory of equivariant objects on `objects`.
    pub fn materialize(&self, objects: &[DgEquivariant], names: &[String]) -> Result<EquivariantPresentation> {
        let p = &self.pretr;
        let field = p.field();
        let n = objects.len();
        let bases: Vec<Vec<Vec<(i64, Vec<Scalar>)>>> = objects
            .iter()
            .map(|a| objects.iter().map(|b| self.hom(a, b)).collect())
            .collect();
        let vecs = |x: usize, y: usize| -> Vec<Vec<Scalar>> { bases[x][y].iter().map(|(_, v)| v.clone()).collect() };
        let coords = |x: usize, y: usize, v: &[Scalar]| -> Result<Vec<Scalar>> {
            if bases[x][y].is_empty() {
                return if v.iter().all(Scalar::is_zero) {
                    Ok(Vec::new())
                } else {
                    Err(Error::Structural(format!("morphism {x} → {y} leaves the equivariant subcomplex")))
                };
            }
            coordinates(field, &vecs(x, y), v)
                .ok_or_else(|| Error::Structural(format!("morphism {x} → {y} leaves the equivariant subcomplex")))
        };
        let mut lin = Presentation::new(field, names.to_vec());
        for x in 0..n {
            for y in 0..n {
                lin.set_hom(x, y, (0..bases[x][y].len()).map(|i| format!("h{i}")).collect());
            }
        }
        for x in 0..n {
            let id = coords(x, x, &p.identity(&objects[x].complex))?;
            lin.set_identity(x, id);
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for (a, (_, g)) in bases[y][z].iter().enumerate() {
                        for (b, (_, f)) in bases[x][y].iter().enumerate() {
                            let gf = p.compose(&objects[x].complex, &objects[y].complex, &objects[z].complex, g, f);
                            let c = coords(x, z, &gf)?;
                            lin.set_product((x, y, z), a, b, c.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect());
                        }
                    }
                }
            }
        }
        let mut dg = DgPresentation::new(lin);
        for x in 0..n {
            for y in 0..n {
                dg.set_degrees(x, y, bases[x][y].iter().map(|(k, _)| *k).collect())?;
                for (a, (_, v)) in bases[x][y].iter().enumerate() {
                    let d = p.differential(&objects[x].complex, &objects[y].complex, v);
                    let c = coords(x, y, &d)?;
                    dg.set_differential(x, y, a, c.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect())?;
                }
            }
        }
        Ok(EquivariantPresentation {
            dg,
            objects: objects.to_vec(),
            bases: (0..n).map(|x| (0..n).map(|y| vecs(x, y)).collect()).collect(),
        })
    }
}

/// The DG category of listed equivariant objects, with Hom bases expressed in the Hom
/// complexes of the underlying twisted complexes.
#[derive(Clone, Debug)]
pub struct EquivariantPresentation {
    pub dg: DgPresentation,
    pub objects: Vec<DgEquivariant>,
    pub bases: Vec<Vec<Vec<Vec<Scalar>>>>,
}

impl EquivariantPresentation {
    /// A morphism in the equivariant presentation as a morphism of underlying complexes.
    pub fn underlying(&self, x: usize, y: usize, c: &[Scalar], total: usize) -> Vec<Scalar> {
        let field = self.dg.field();
        let mut out = vec![field.zero(); total];
        for (coef, v) in c.iter().zip(&self.bases[x][y]) {
            for (o, s) in out.iter_mut().zip(v) {
                *o = &*o + &(coef * s);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn swap(field: Field) -> EquivariantPretr {
        let base = Arc::new(DgPresentation::new(Presentation::discrete(field, &["V0", "V1", "V2"])));
        let action = DgAction::from_permutation(&base, Group::cyclic(2), vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        assert!(action.check(&base).unwrap().passes());
        EquivariantPretr::new(Pretr::new(base), Arc::new(action))
    }

    #[test]
    fn swapped_cone_sum_has_no_structure() {
        let e = swap(Field::Prime(5));
        let p = &e.pretr;
        let v1 = p.object(1, 0);
        let m1 = p.direct_sum(&[&p.object(0, 0), &p.cone(&v1, &v1, &p.identity(&v1)).unwrap()]);
        let s = e.structures(&m1, Budget::default()).unwrap();
        assert!(s.complete);
        assert!(s.found.is_empty());
    }

    #[test]
    fn fixed_object_has_two_signs() {
        let e = swap(Field::Prime(5));
        let v0 = e.pretr.object(0, 0);
        let s = e.structures(&v0, Budget::default()).unwrap();
        assert!(s.complete);
        assert_eq!(s.found.len(), 2);
    }

    #[test]
    fn equivariant_hom_is_a_subcomplex() {
        let e = swap(Field::Prime(5));
        let p = &e.pretr;
        let v1 = p.object(1, 0);
        let v2 = p.object(2, 0);
        let n = p.direct_sum(&[&v1, &v2]);
        let c = p.cone(&n, &n, &p.identity(&n)).unwrap();
        let mut objs = Vec::new();
        for t in [p.object(0, 0), p.shift(&p.object(0, 0), 1), n, c] {
            let s = e.structures(&t, Budget::default()).unwrap();
            assert!(s.complete);
            objs.extend(s.found.into_iter().take(2));
        }
        let names: Vec<String> = (0..objs.len()).map(|i| format!("E{i}")).collect();
        let m = e.materialize(&objs, &names).unwrap();
        assert!(m.dg.check().unwrap().passes());
    }

    #[test]
    fn induced_objects_split_the_unit() {
        let e = swap(Field::Prime(5));
        let p = &e.pretr;
        let v1 = p.object(1, 0);
        let m1 = p.direct_sum(&[&p.object(0, 0), &p.cone(&v1, &v1, &p.identity(&v1)).unwrap()]);
        let ind = e.induce(&m1);
        assert!(e.check_structure(&ind.complex, &ind.thetas).unwrap().passes());
        assert!(e.check_split_unit(&ind).unwrap().passes());
        for s in e.structures(&p.object(0, 0), Budget::default()).unwrap().found {
            assert!(e.check_split_unit(&s).unwrap().passes());
        }
    }
}
