//! The common interface of every category built here, and generic algorithms over it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::lincat::envelope::{combination, Envelope, Mor, Obj};
use crate::lincat::presentation::Presentation;
use crate::matrix::{coordinates, Matrix};
use crate::search::{Budget, Search};

/// A k-linear category whose morphisms are envelope morphisms between underlying sums and
/// whose composition is envelope composition. Hom spaces are subspaces of the ambient
/// envelope Hom spaces, described by a basis.
pub trait Category: Send + Sync {
    fn envelope(&self) -> &Envelope;

    fn identity(&self, x: &Obj) -> Mor;

    /// A linearly independent basis of `Hom(x, y)`.
    fn hom_basis(&self, x: &Obj, y: &Obj) -> Result<Vec<Mor>>;

    fn direct_sum(&self, xs: &[Obj]) -> Result<Obj>;

    /// Whether `x` has the shape of an object of this category.
    fn contains(&self, x: &Obj) -> bool;

    fn name(&self) -> String;

    fn field(&self) -> Field {
        self.envelope().field()
    }

    fn compose(&self, g: &Mor, f: &Mor) -> Mor {
        self.envelope().compose(g, f)
    }

    fn hom_dim(&self, x: &Obj, y: &Obj) -> Result<usize> {
        Ok(self.hom_basis(x, y)?.len())
    }

    fn zero_mor(&self, x: &Obj, y: &Obj) -> Mor {
        self.envelope().zero(x.underlying(), y.underlying())
    }

    /// Coordinates of `f` in [`hom_basis`](Self::hom_basis), or `None` if `f ∉ Hom(x, y)`.
    fn coords_in(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Option<Vec<Scalar>>> {
        if f.src != x.underlying() || f.tgt != y.underlying() {
            return Ok(None);
        }
        let basis = self.hom_basis(x, y)?;
        let vecs: Vec<Vec<Scalar>> = basis.into_iter().map(|b| b.coords).collect();
        Ok(coordinates(self.field(), &vecs, &f.coords))
    }

    fn is_morphism(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<bool> {
        Ok(self.coords_in(x, y, f)?.is_some())
    }

    /// The two-sided inverse of `f : x → y`, if it exists.
    fn inverse(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Option<Mor>> {
        let basis = self.hom_basis(y, x)?;
        let (idx, idy) = (self.identity(x), self.identity(y));
        if basis.is_empty() {
            let zero = self.zero_mor(y, x);
            return Ok((idx.is_zero() && idy.is_zero()).then_some(zero));
        }
        let rows = idx.coords.len() + idy.coords.len();
        let cols: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|b| {
                let mut v = self.compose(b, f).coords;
                v.extend(self.compose(f, b).coords);
                v
            })
            .collect();
        let mut rhs = idx.coords.clone();
        rhs.extend(idy.coords.iter().cloned());
        let m = Matrix::from_columns(self.field(), rows, &cols);
        Ok(m.solve(&rhs).map(|c| combination(&c, &basis)))
    }

    fn injection(&self, xs: &[Obj], i: usize) -> Result<Mor> {
        let parts: Vec<Vec<usize>> = xs.iter().map(|x| x.underlying().to_vec()).collect();
        let sum = self.direct_sum(xs)?;
        let env = self.envelope();
        let inj = env.injection(&parts, i);
        Ok(self.compose(&self.identity(&sum), &self.compose(&inj, &self.identity(&xs[i]))))
    }

    fn projection(&self, xs: &[Obj], i: usize) -> Result<Mor> {
        let parts: Vec<Vec<usize>> = xs.iter().map(|x| x.underlying().to_vec()).collect();
        let sum = self.direct_sum(xs)?;
        let env = self.envelope();
        let pr = env.projection(&parts, i);
        Ok(self.compose(&self.identity(&xs[i]), &self.compose(&pr, &self.identity(&sum))))
    }
}

impl Category for Envelope {
    fn envelope(&self) -> &Envelope {
        self
    }

    fn identity(&self, x: &Obj) -> Mor {
        Envelope::identity(self, x.underlying())
    }

    fn hom_basis(&self, x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::Input(format!(
                "envelope objects must be formal sums, got {} and {}",
                x.kind(),
                y.kind()
            )));
        }
        Ok(self.basis(x.underlying(), y.underlying()))
    }

    fn direct_sum(&self, xs: &[Obj]) -> Result<Obj> {
        if let Some(bad) = xs.iter().find(|x| !self.contains(x)) {
            return Err(Error::Input(format!("not a formal sum: {bad:?}")));
        }
        Ok(Obj::Sum(xs.iter().flat_map(|x| x.underlying().to_vec()).collect()))
    }

    fn contains(&self, x: &Obj) -> bool {
        matches!(x, Obj::Sum(xs) if xs.iter().all(|&i| i < self.presentation().num_objects()))
    }

    fn name(&self) -> String {
        "additive envelope".into()
    }
}

/// An isomorphism together with its inverse.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Iso {
    pub forward: Mor,
    pub backward: Mor,
}

/// Scalars used for random candidates: uniform over F_p, small integers over Q.
pub(crate) fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        Field::Rational => field.from_i64(rng.gen_range(-3..=3)),
    }
}

const RANDOM_PHASE: u64 = 64;

/// Searches a subspace (given by a basis) for a vector satisfying `accept`.
///
/// A seeded random phase runs first. Over a finite field the whole subspace is then enumerated
/// if it fits in the remaining budget, which makes a negative answer exhaustive. Over Q a
/// negative answer is never certified here, so exhaustion reports `BudgetExceeded`.
pub(crate) fn search_subspace<T>(
    field: Field,
    basis: &[Mor],
    budget: Budget,
    seed: u64,
    mut accept: impl FnMut(&Mor) -> Result<Option<T>>,
) -> Result<Search<T>> {
    let d = basis.len();
    if d == 0 {
        return Ok(Search::NoneFound("the space to search is zero".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tried = 0u64;
    let phase = RANDOM_PHASE.min(budget.0);
    while tried < phase {
        tried += 1;
        let c: Vec<Scalar> = (0..d).map(|_| random_scalar(field, &mut rng)).collect();
        if let Some(t) = accept(&combination(&c, basis))? {
            return Ok(Search::Found(t));
        }
    }
    let Field::Prime(p) = field else {
        return Ok(Search::BudgetExceeded { tried });
    };
    let total = (p as u128).checked_pow(d as u32);
    let mut counter = vec![0u64; d];
    loop {
        if tried >= budget.0 {
            return Ok(Search::BudgetExceeded { tried });
        }
        tried += 1;
        let c: Vec<Scalar> = counter.iter().map(|&v| field.from_i64(v as i64)).collect();
        if let Some(t) = accept(&combination(&c, basis))? {
            return Ok(Search::Found(t));
        }
        let mut k = 0;
        loop {
            if k == d {
                return Ok(Search::NoneFound(format!(
                    "exhaustive search over {} candidates",
                    total.map_or("many".into(), |t| t.to_string())
                )));
            }
            counter[k] += 1;
            if counter[k] < p {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
    }
}

/// Dimensions that must agree for `x ≅ y`.
pub fn iso_invariants(c: &dyn Category, x: &Obj, y: &Obj) -> Result<[usize; 4]> {
    Ok([
        c.hom_dim(x, x)?,
        c.hom_dim(y, y)?,
        c.hom_dim(x, y)?,
        c.hom_dim(y, x)?,
    ])
}

/// Looks for an isomorphism `x → y`. `NoneFound` is reported only when a dimension
/// obstruction applies or (over a finite field) the search was exhaustive.
pub fn find_iso(
    c: &dyn Category,
    x: &Obj,
    y: &Obj,
    budget: Budget,
    seed: u64,
) -> Result<Search<Iso>> {
    let dims = iso_invariants(c, x, y)?;
    if dims.iter().any(|&d| d != dims[0]) {
        return Ok(Search::NoneFound(format!(
            "dimension obstruction: dim End = {}, {}; dim Hom = {}, {}",
            dims[0], dims[1], dims[2], dims[3]
        )));
    }
    if x == y {
        let id = c.identity(x);
        return Ok(Search::Found(Iso {
            forward: id.clone(),
            backward: id,
        }));
    }
    let basis = c.hom_basis(x, y)?;
    if basis.is_empty() {
        return Ok(match c.inverse(x, y, &c.zero_mor(x, y))? {
            Some(b) => Search::Found(Iso {
                forward: c.zero_mor(x, y),
                backward: b,
            }),
            None => Search::NoneFound("Hom(x, y) = 0 and x is nonzero".into()),
        });
    }
    search_subspace(c.field(), &basis, budget, seed, |f| {
        Ok(c.inverse(x, y, f)?.map(|b| Iso {
            forward: f.clone(),
            backward: b,
        }))
    })
}

/// A full subcategory on finitely many objects, presented by Hom bases.
#[derive(Clone, Debug)]
pub struct Materialized {
    pub presentation: Presentation,
    pub objects: Vec<Obj>,
    pub bases: Vec<Vec<Vec<Mor>>>,
    pub envelope: Envelope,
}

impl Materialized {
    /// The morphism with the given coordinates in `hom(i, j)`.
    pub fn to_mor(&self, i: usize, j: usize, coords: &[Scalar]) -> Mor {
        let basis = &self.bases[i][j];
        if basis.is_empty() {
            return self
                .envelope
                .zero(self.objects[i].underlying(), self.objects[j].underlying());
        }
        combination(coords, basis)
    }
}

/// Presents the full subcategory of `c` on `objects` with names `names`.
pub fn materialize(c: &dyn Category, objects: &[Obj], names: &[String]) -> Result<Materialized> {
    let n = objects.len();
    let field = c.field();
    let mut pres = Presentation::new(field, names.to_vec());
    let mut bases = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let b = c.hom_basis(&objects[i], &objects[j])?;
            pres.set_hom(i, j, (0..b.len()).map(|k| format!("e{k}")).collect());
            bases[i][j] = b;
        }
    }
    let coords = |i: usize, j: usize, f: &Mor| -> Result<Vec<Scalar>> {
        let vecs: Vec<Vec<Scalar>> = bases[i][j].iter().map(|b| b.coords.clone()).collect();
        coordinates(field, &vecs, &f.coords).ok_or_else(|| {
            Error::Structural(format!(
                "{}: morphism {} → {} outside the computed Hom space",
                c.name(),
                names[i],
                names[j]
            ))
        })
    };
    for i in 0..n {
        let id = coords(i, i, &c.identity(&objects[i]))?;
        pres.set_identity(i, id);
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bases[x][y].is_empty() || bases[y][z].is_empty() {
                    continue;
                }
                for (a, ga) in bases[y][z].iter().enumerate() {
                    for (b, fb) in bases[x][y].iter().enumerate() {
                        let v = coords(x, z, &c.compose(ga, fb))?;
                        let sparse = v.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect();
                        pres.set_product((x, y, z), a, b, sparse);
                    }
                }
            }
        }
    }
    Ok(Materialized {
        presentation: pres,
        objects: objects.to_vec(),
        bases,
        envelope: c.envelope().clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn a2(field: Field) -> Envelope {
        Envelope::new(Arc::new(Presentation::a2_quiver(field)))
    }

    #[test]
    fn inverse_of_permutation() {
        let e = a2(Field::Rational);
        let x = Obj::base(&[0, 1]);
        let y = Obj::base(&[1, 0]);
        let iso = find_iso(&e, &x, &y, Budget::default(), 1).unwrap().found().unwrap();
        assert_eq!(e.compose(&iso.backward, &iso.forward), Category::identity(&e, &x));
    }

    #[test]
    fn obstruction_reported() {
        let e = a2(Field::Prime(3));
        let r = find_iso(&e, &Obj::base(&[0]), &Obj::base(&[1]), Budget::default(), 0).unwrap();
        assert!(r.is_none_found());
    }

    #[test]
    fn materialize_recovers_presentation() {
        let e = a2(Field::Prime(5));
        let objs = vec![Obj::base(&[0]), Obj::base(&[1]), Obj::base(&[0, 1])];
        let names: Vec<String> = ["a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        let m = materialize(&e, &objs, &names).unwrap();
        assert!(m.presentation.validate().unwrap().passes());
        assert_eq!(m.presentation.dim(2, 2), 3);
    }
}
