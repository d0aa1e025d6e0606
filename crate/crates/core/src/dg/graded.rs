//! Complexes of Z/3-graded vector spaces with Z/2 swapping the grades 1 and 2: the objects
//! `M_i = V_0 ⊕ Cone(1_{V_i})`, the subcategories they generate, and the reports showing how
//! equivariant objects fail to be closed under shifts until idempotents are split.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dg::equivariant::{DgAction, DgEquivariant, EquivariantPretr};
use crate::dg::homotopy::HomotopyComparison;
use crate::dg::presentation::DgPresentation;
use crate::dg::twisted::{Pretr, TwistedComplex};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::Group;
use crate::lincat::category::{find_iso, Category};
use crate::lincat::envelope::{Mor, Obj};
use crate::lincat::equivalence::{EquivalenceCertificate, EssentialImage};
use crate::lincat::functor::CheckReport;
use crate::lincat::presentation::Presentation;
use crate::search::{Budget, Search};

/// How a twisted complex is built from `M_1` and `M_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Construction {
    /// `M_i`, `i ∈ {1, 2}`; any other index is rejected when building.
    M(usize),
    Shift(Box<Construction>, i64),
    /// `Cone(f)` for a closed degree-0 `f`, given by coefficients on the basis of closed
    /// degree-0 morphisms.
    Cone(Box<Construction>, Box<Construction>, Vec<i64>),
    Sum(Box<Construction>, Box<Construction>),
    /// `N ⊕ φ_g N`, which carries the induced equivariant structure.
    Induced(Box<Construction>),
}

/// Per cohomological degree `i`, the multiplicities `(dim_0, dim_1, dim_2)` of the grades in `N^i`.
pub type GradedDims = BTreeMap<i64, [usize; 3]>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub dims: GradedDims,
    /// Degrees where `dim_1(N^i) + dim_2(N^i) = dim_0(N^i) + dim_0(N^{i+1})` fails.
    pub relation_failures: Vec<i64>,
    /// `dim_1(N^i) = dim_2(N^i)` in every degree; holds for every object with an equivariant
    /// structure.
    pub balanced: bool,
    /// `Σ (-1)^i dim H^i(N)_0`.
    pub euler0: i64,
}

impl ParityReport {
    pub fn relation_holds(&self) -> bool {
        self.relation_failures.is_empty()
    }

    /// Balanced complexes have even grade-0 Euler characteristic.
    pub fn parity_holds(&self) -> bool {
        !self.balanced || self.euler0 % 2 == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ListedObject {
    pub name: String,
    /// Cohomology dimensions `(degree, [H_0, H_1, H_2])` equal those of `V_0`.
    pub quasi_isomorphic_to_v0: bool,
    pub structures: usize,
}

/// Equivariant objects on a list of complexes that avoids `V_0` up to quasi-isomorphism,
/// except for `M_1` and `M_2`.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftClosureReport {
    pub objects: Vec<ListedObject>,
    /// Structures found on `M_1` and on `M_2`.
    pub structures_on_m: [usize; 2],
    /// Structures on `V_0`.
    pub structures_on_v0: usize,
    /// Listed equivariant objects whose homotopy-category isomorphism with `(V_0, 1)` was
    /// searched for exhaustively, and how many were found.
    pub searched: usize,
    pub isomorphic_to_v0: usize,
    /// `(V_0[-1], 1)` is listed.
    pub shifted_present: bool,
}

impl ShiftClosureReport {
    pub fn affirmative(&self) -> bool {
        self.structures_on_m == [0, 0]
            && self.isomorphic_to_v0 == 0
            && self.shifted_present
            && self.objects.iter().all(|o| !o.quasi_isomorphic_to_v0 || o.structures == 0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub sampled: usize,
    pub relation_failures: usize,
    pub balanced: usize,
    pub parity_failures: usize,
    /// Sampled complexes carrying an equivariant structure.
    pub equivariant: usize,
    /// Of those, how many have odd grade-0 Euler characteristic (as `V_0` does).
    pub equivariant_odd: usize,
}

impl SampleReport {
    pub fn passes(&self) -> bool {
        self.relation_failures == 0 && self.parity_failures == 0 && self.equivariant_odd == 0
    }
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub split_unit: CheckReport,
    pub sources: Vec<Obj>,
    pub targets: Vec<Obj>,
    /// From the idempotent completion of the equivariant homotopy category.
    pub completed: EquivalenceCertificate,
    /// From the equivariant homotopy category itself.
    pub uncompleted: EquivalenceCertificate,
    /// Positions in `targets` of `(V_0, 1)` and `(V_0, sign)`.
    pub simples: [usize; 2],
}

impl ComparisonReport {
    pub fn simple_hit(&self, completed: bool, k: usize) -> bool {
        let cert = if completed { &self.completed } else { &self.uncompleted };
        cert.essential[self.simples[k]].is_hit()
    }
}

pub struct GradedSwap {
    pub ep: EquivariantPretr,
}

impl GradedSwap {
    pub fn new(field: Field) -> Result<Self> {
        let base = Arc::new(DgPresentation::new(Presentation::discrete(field, &["V0", "V1", "V2"])));
        let action = DgAction::from_permutation(&base, Group::cyclic(2), vec![vec![0, 1, 2], vec![0, 2, 1]])?;
        Ok(GradedSwap {
            ep: EquivariantPretr::new(Pretr::new(base), Arc::new(action)),
        })
    }

    pub fn pretr(&self) -> &Pretr {
        &self.ep.pretr
    }

    pub fn v(&self, i: usize) -> TwistedComplex {
        self.pretr().object(i, 0)
    }

    fn cone_id(&self, i: usize) -> TwistedComplex {
        let p = self.pretr();
        let v = self.v(i);
        p.cone(&v, &v, &p.identity(&v)).expect("identity is closed")
    }

    /// `V_0 ⊕ [V_i → V_i]` in degrees -1 and 0.
    pub fn m(&self, i: usize) -> TwistedComplex {
        self.pretr().direct_sum(&[&self.v(0), &self.cone_id(i)])
    }

    /// `(V_0, s)` with `θ_g = s`.
    pub fn v0_with_sign(&self, sign: i64) -> DgEquivariant {
        let field = self.pretr().field();
        DgEquivariant {
            complex: self.v(0),
            thetas: vec![vec![field.one()], vec![field.from_i64(sign)]],
        }
    }

    /// The closed map `M_i → M_j` that is the identity on `V_0` and zero on the cones.
    pub fn v0_map(&self, i: usize, j: usize) -> Vec<Scalar> {
        let p = self.pretr();
        let (v0, ci, cj) = (self.v(0), self.cone_id(i), self.cone_id(j));
        p.assemble(&[&v0, &ci], &[&v0, &cj], &[(0, 0, p.identity(&v0))])
    }

    pub fn build(&self, c: &Construction) -> Result<TwistedComplex> {
        let p = self.pretr();
        Ok(match c {
            Construction::M(i) if *i == 1 || *i == 2 => self.m(*i),
            Construction::M(i) => return Err(Error::Input(format!("M_{i} is not a generator; only M_1 and M_2 are"))),
            Construction::Shift(x, n) => p.shift(&self.build(x)?, *n),
            Construction::Cone(s, t, coeffs) => {
                let (s, t) = (self.build(s)?, self.build(t)?);
                let f = self.cycle(&s, &t, coeffs)?;
                p.cone(&s, &t, &f)?
            }
            Construction::Sum(a, b) => p.direct_sum(&[&self.build(a)?, &self.build(b)?]),
            Construction::Induced(x) => self.ep.induce(&self.build(x)?).complex,
        })
    }

    fn cycle(&self, s: &TwistedComplex, t: &TwistedComplex, coeffs: &[i64]) -> Result<Vec<Scalar>> {
        let p = self.pretr();
        let field = p.field();
        let basis = p.cycles0(s, t);
        if coeffs.len() != basis.len() {
            return Err(Error::Input(format!(
                "cone needs {} coefficients, got {}",
                basis.len(),
                coeffs.len()
            )));
        }
        let mut f = p.zero(s, t);
        for (c, b) in coeffs.iter().zip(&basis) {
            let c = field.from_i64(*c);
            for (o, v) in f.iter_mut().zip(b) {
                *o = &*o + &(&c * v);
            }
        }
        Ok(f)
    }

    /// Grade multiplicities per cohomological degree; the entry `X[n]` sits in degree `-n`.
    pub fn graded_dims(&self, t: &TwistedComplex) -> GradedDims {
        let mut out = GradedDims::new();
        for &(x, n) in &t.entries {
            out.entry(-n).or_insert([0; 3])[x] += 1;
        }
        out
    }

    /// `(degree, [dim H^i(N)_0, dim H^i(N)_1, dim H^i(N)_2])` for nonzero degrees.
    pub fn cohomology(&self, t: &TwistedComplex) -> Vec<(i64, [usize; 3])> {
        let mut out: BTreeMap<i64, [usize; 3]> = BTreeMap::new();
        for c in 0..3 {
            for (k, d) in self.pretr().hom_cohomology_dims(&self.v(c), t) {
                out.entry(k).or_insert([0; 3])[c] = d;
            }
        }
        out.into_iter().collect()
    }

    pub fn parity(&self, c: &Construction) -> Result<ParityReport> {
        let t = self.build(c)?;
        Ok(self.parity_of(&t))
    }

    fn parity_of(&self, t: &TwistedComplex) -> ParityReport {
        let dims = self.graded_dims(t);
        let get = |i: i64| dims.get(&i).copied().unwrap_or([0; 3]);
        let mut relation_failures = Vec::new();
        if let (Some(&lo), Some(&hi)) = (dims.keys().next(), dims.keys().last()) {
            for i in lo - 1..=hi {
                let (a, b) = (get(i), get(i + 1));
                if a[1] + a[2] != a[0] + b[0] {
                    relation_failures.push(i);
                }
            }
        }
        let balanced = dims.values().all(|d| d[1] == d[2]);
        let euler0 = self
            .pretr()
            .hom_cohomology_dims(&self.v(0), t)
            .into_iter()
            .map(|(k, d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        ParityReport {
            dims,
            relation_failures,
            balanced,
            euler0,
        }
    }

    /// Builds `count` complexes from `M_1`, `M_2` by random shifts, cones, sums and inductions,
    /// keeping each below `max_entries` entries.
    pub fn sample(&self, count: usize, max_entries: usize, seed: u64) -> Result<Vec<Construction>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = self.pretr();
        let mut pool: Vec<(Construction, TwistedComplex)> =
            vec![(Construction::M(1), self.m(1)), (Construction::M(2), self.m(2))];
        let modulus = match p.field() {
            Field::Prime(q) => q as i64,
            Field::Rational => 3,
        };
        let mut attempts = 0;
        while pool.len() < count {
            attempts += 1;
            if attempts > 100 * count {
                return Err(Error::Input("could not sample enough complexes under the size bound".into()));
            }
            let (a, ta) = pool.choose(&mut rng).expect("nonempty").clone();
            let (b, tb) = pool.choose(&mut rng).expect("nonempty").clone();
            let c = match rng.gen_range(0..4) {
                0 => Construction::Shift(Box::new(a), rng.gen_range(-2..=2)),
                1 => {
                    if ta.len() + tb.len() > max_entries {
                        continue;
                    }
                    let d = p.cycles0(&ta, &tb).len();
                    let coeffs = (0..d).map(|_| rng.gen_range(0..modulus)).collect();
                    Construction::Cone(Box::new(a), Box::new(b), coeffs)
                }
                2 => Construction::Sum(Box::new(a), Box::new(b)),
                _ => Construction::Induced(Box::new(a)),
            };
            let t = self.build(&c)?;
            if t.len() > max_entries {
                continue;
            }
            pool.push((c, t));
        }
        Ok(pool.into_iter().map(|(c, _)| c).collect())
    }

    /// Checks the dimension relation and the parity on every sampled complex. Induced
    /// complexes carry an equivariant structure and must have even grade-0 Euler characteristic.
    pub fn sample_report(&self, samples: &[Construction]) -> Result<SampleReport> {
        let mut r = SampleReport {
            sampled: samples.len(),
            relation_failures: 0,
            balanced: 0,
            parity_failures: 0,
            equivariant: 0,
            equivariant_odd: 0,
        };
        for c in samples {
            let t = self.build(c)?;
            let rep = self.parity_of(&t);
            r.relation_failures += usize::from(!rep.relation_holds());
            r.balanced += usize::from(rep.balanced);
            r.parity_failures += usize::from(!rep.parity_holds());
            if let Construction::Induced(inner) = c {
                let e = self.ep.induce(&self.build(inner)?);
                if !self.ep.check_structure(&e.complex, &e.thetas)?.passes() {
                    return Err(Error::Structural("induced structure fails its checks".into()));
                }
                r.equivariant += 1;
                r.equivariant_odd += usize::from(rep.euler0 % 2 != 0);
            }
        }
        Ok(r)
    }

    /// Complexes not quasi-isomorphic to `V_0`, together with `M_1` and `M_2`.
    pub fn a0_objects(&self) -> Vec<(String, TwistedComplex)> {
        let p = self.pretr();
        let (v0, v1, v2) = (self.v(0), self.v(1), self.v(2));
        vec![
            ("0".into(), p.zero_object()),
            ("V0[-1]".into(), p.shift(&v0, -1)),
            ("V0[1]".into(), p.shift(&v0, 1)),
            ("V0⊕V0".into(), p.direct_sum(&[&v0, &v0])),
            ("V1".into(), v1.clone()),
            ("V2".into(), v2.clone()),
            ("V1⊕V2".into(), p.direct_sum(&[&v1, &v2])),
            ("V0⊕V1".into(), p.direct_sum(&[&v0, &v1])),
            ("Cone(1_V0)".into(), self.cone_id(0)),
            ("M1".into(), self.m(1)),
            ("M2".into(), self.m(2)),
        ]
    }

    /// Enumerates equivariant structures on the listed objects and searches the homotopy
    /// category of equivariant objects for one isomorphic to `(V_0, 1)`.
    pub fn shift_closure(&self, budget: Budget, seed: u64) -> Result<ShiftClosureReport> {
        let p = self.pretr();
        let v0_cohomology = self.cohomology(&self.v(0));
        let mut objects = Vec::new();
        let mut equivariant = Vec::new();
        let mut structures_on_m = [0; 2];
        let mut shifted_present = false;
        for (name, t) in self.a0_objects() {
            let s = self.ep.structures(&t, budget)?;
            if !s.complete {
                return Err(budget.exceeded(format!("equivariant structures on {name}")));
            }
            if name == "M1" || name == "M2" {
                structures_on_m[usize::from(name == "M2")] = s.found.len();
            }
            if t == p.shift(&self.v(0), -1) {
                let trivial = DgEquivariant {
                    complex: t.clone(),
                    thetas: vec![p.identity(&t); 2],
                };
                shifted_present = s.found.contains(&trivial);
            }
            objects.push(ListedObject {
                name,
                quasi_isomorphic_to_v0: self.cohomology(&t) == v0_cohomology,
                structures: s.found.len(),
            });
            equivariant.extend(s.found);
        }
        let structures_on_v0 = self.ep.structures(&self.v(0), budget)?.found.len();
        let target = self.v0_with_sign(1);
        let mut all = equivariant.clone();
        all.push(target.clone());
        let names: Vec<String> = (0..all.len()).map(|i| format!("E{i}")).collect();
        let h0 = self.ep.materialize(&all, &names)?.dg.h0()?;
        let env: Arc<dyn Category> = Arc::new(crate::lincat::envelope::Envelope::new(Arc::new(h0.presentation)));
        let last = Obj::base(&[all.len() - 1]);
        let mut isomorphic_to_v0 = 0;
        for i in 0..equivariant.len() {
            match find_iso(&*env, &Obj::base(&[i]), &last, budget, seed.wrapping_add(i as u64))? {
                Search::Found(_) => isomorphic_to_v0 += 1,
                Search::NoneFound(_) => {}
                Search::BudgetExceeded { .. } => return Err(budget.exceeded("isomorphism search against (V0, 1)")),
            }
        }
        Ok(ShiftClosureReport {
            objects,
            structures_on_m,
            structures_on_v0,
            searched: equivariant.len(),
            isomorphic_to_v0,
            shifted_present,
        })
    }

    /// Shifts and cones of `M_1`, `M_2` up to the listed complexes, with `V_0` added when
    /// `with_v0` is set.
    pub fn generated(&self, with_v0: bool) -> (Vec<TwistedComplex>, Vec<DgEquivariant>) {
        let p = self.pretr();
        let (m1, m2) = (self.m(1), self.m(2));
        let mut complexes = Vec::new();
        let mut objects = Vec::new();
        if with_v0 {
            complexes.push(self.v(0));
            objects.push(self.v0_with_sign(1));
            objects.push(self.v0_with_sign(-1));
        }
        complexes.extend([m1.clone(), m2.clone(), p.direct_sum(&[&m1, &m2]), p.direct_sum(&[&m2, &m1])]);
        objects.push(self.ep.induce(&m1));
        objects.push(self.ep.induce(&m2));
        (complexes, objects)
    }

    /// Compares the equivariant homotopy category, with and without splitting idempotents,
    /// with equivariant objects in the completed homotopy category.
    pub fn comparison(&self, with_v0: bool, budget: Budget, seed: u64) -> Result<ComparisonReport> {
        let (complexes, objects) = self.generated(with_v0);
        let cmp = HomotopyComparison::new(&self.ep, &complexes, &objects)?;
        let split_unit = cmp.check_split_unit(&self.ep)?;
        let mut targets = cmp.targets(budget, seed)?;
        let simples = self.simple_targets(&cmp, with_v0)?;
        let mut positions = [0; 2];
        for (k, s) in simples.into_iter().enumerate() {
            positions[k] = match targets.iter().position(|t| {
                matches!(find_iso(&*cmp.target, t, &s, budget, seed), Ok(Search::Found(_)))
            }) {
                Some(i) => i,
                None => {
                    targets.push(s);
                    targets.len() - 1
                }
            };
        }
        let sources = cmp.with_pairwise_sums(&cmp.completed_sources(budget, seed)?)?;
        let completed = cmp.certify(&sources, &targets, budget, seed)?;
        let plain = cmp.with_pairwise_sums(&cmp.uncompleted_sources())?;
        let uncompleted = cmp.certify(&plain, &targets, budget, seed)?;
        Ok(ComparisonReport {
            split_unit,
            sources,
            targets,
            completed,
            uncompleted,
            simples: positions,
        })
    }

    /// `(X, ±θ)` with `X ≅ V_0`: `V_0` itself when listed, otherwise `M_1` with `θ_g` the class
    /// of the map that is the identity on `V_0`.
    fn simple_targets(&self, cmp: &HomotopyComparison, with_v0: bool) -> Result<[Obj; 2]> {
        let hc = &cmp.homotopy;
        let env = &hc.envelope;
        let (x, gx, theta) = if with_v0 {
            (0, 0, env.identity(&[0]))
        } else {
            let i = hc.index(&self.m(1)).expect("M1 is listed");
            let j = hc.index(&self.m(2)).expect("M2 is listed");
            (i, j, hc.class(i, j, &self.v0_map(1, 2))?)
        };
        let obj = Obj::Retract(Box::new(Obj::base(&[x])), env.identity(&[x]));
        debug_assert_eq!((theta.src.as_slice(), theta.tgt.as_slice()), (&[x][..], &[gx][..]));
        let make = |t: Mor| Obj::Equivariant(Box::new(obj.clone()), vec![env.identity(&[x]), t]);
        Ok([make(theta.clone()), make(theta.neg())])
    }
}

/// Positions of targets missed by a certificate.
pub fn missed(cert: &EquivalenceCertificate) -> Vec<usize> {
    cert.essential
        .iter()
        .enumerate()
        .filter(|(_, e)| matches!(e, EssentialImage::Miss(_)))
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> GradedSwap {
        GradedSwap::new(Field::Prime(5)).unwrap()
    }

    #[test]
    fn m1_has_the_stated_dimensions() {
        let s = swap();
        let r = s.parity(&Construction::M(1)).unwrap();
        assert_eq!(r.dims, GradedDims::from([(-1, [0, 1, 0]), (0, [1, 1, 0])]));
        assert!(r.relation_holds());
        assert_eq!(r.euler0, 1);
    }

    #[test]
    fn cone_of_zero_and_sum_satisfy_the_relation() {
        let s = swap();
        let d = s.pretr().cycles0(&s.m(1), &s.m(2)).len();
        let cone = Construction::Cone(Box::new(Construction::M(1)), Box::new(Construction::M(2)), vec![0; d]);
        assert!(s.parity(&cone).unwrap().relation_holds());
        let sum = Construction::Sum(Box::new(Construction::M(1)), Box::new(Construction::M(2)));
        let r = s.parity(&sum).unwrap();
        assert!(r.balanced);
        assert_eq!(r.euler0 % 2, 0);
        assert!(s.parity(&Construction::M(0)).is_err());
    }

    #[test]
    fn m1_is_v0_in_the_homotopy_category() {
        let s = swap();
        assert_eq!(s.cohomology(&s.m(1)), s.cohomology(&s.v(0)));
        let end = s.pretr().hom_cohomology(&s.m(1), &s.m(1), 0);
        assert_eq!(end.dim(), 1);
    }

    #[test]
    fn shifts_of_equivariant_objects_are_missing() {
        let s = swap();
        let r = s.shift_closure(Budget::default(), 7).unwrap();
        assert_eq!(r.structures_on_m, [0, 0]);
        assert_eq!(r.structures_on_v0, 2);
        assert!(r.affirmative(), "{r:?}");
    }

    #[test]
    fn sampled_complexes_satisfy_the_relation() {
        let s = swap();
        let samples = s.sample(40, 12, 3).unwrap();
        let r = s.sample_report(&samples).unwrap();
        assert!(r.passes(), "{r:?}");
        assert!(r.equivariant > 0);
    }

    #[test]
    fn splitting_idempotents_recovers_the_simples() {
        let s = swap();
        let with = s.comparison(true, Budget::default(), 1).unwrap();
        assert!(with.split_unit.passes());
        assert!(with.completed.fully_faithful() && with.completed.misses().is_empty());
        assert!(with.simple_hit(false, 0) && with.simple_hit(false, 1));
        let without = s.comparison(false, Budget::default(), 1).unwrap();
        assert!(without.completed.fully_faithful() && without.completed.misses().is_empty());
        assert!(without.simple_hit(true, 0) && without.simple_hit(true, 1));
        assert!(!without.simple_hit(false, 0));
    }
}
