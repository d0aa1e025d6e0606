//! Characters of a finite abelian group, the twisting action of the dual group on
//! equivariant objects, the regular comonad, and the equivalence `(C^G)^{G∨} → C` assembled
//! from comparison functors and comonad isomorphisms.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::action::Action;
use crate::equivar::{structure, Equivariantization};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::Group;
use crate::karoubi::{idempotent_completeness, Completeness};
use crate::lincat::category::{find_iso, Category, Iso};
use crate::lincat::envelope::{combination, Mor, Obj};
use crate::lincat::equivalence::{check_equivalence, EquivalenceCertificate};
use crate::lincat::functor::{CheckReport, Component, Functor};
use crate::matrix::Matrix;
use crate::monadic::{check_comonad, check_comonad_iso, Comonad, ComoduleCat};
use crate::search::{Budget, Search};

/// The characters `G → k^×` of a finite abelian group, with their pointwise product table.
#[derive(Clone, Debug, PartialEq)]
pub struct DualGroup {
    pub group: Group,
    /// `characters[χ][g] = χ(g)`.
    pub characters: Vec<Vec<Scalar>>,
}

impl DualGroup {
    pub fn value(&self, chi: usize, g: usize) -> &Scalar {
        &self.characters[chi][g]
    }

    pub fn order(&self) -> usize {
        self.characters.len()
    }
}

fn has_primitive_root(field: Field, order: usize) -> bool {
    match field {
        Field::Rational => order <= 2,
        Field::Prime(p) => (p - 1) % order as u64 == 0,
    }
}

/// All characters of `g` with values in `field`.
pub fn dual_group(g: &Group, field: Field) -> Result<DualGroup> {
    if !g.is_abelian() {
        return Err(Error::Precondition("the dual group needs an abelian group".into()));
    }
    let mut orders: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
    orders.sort_unstable();
    orders.dedup();
    if let Some(&bad) = orders.iter().find(|&&o| !has_primitive_root(field, o)) {
        return Err(Error::MissingRootsOfUnity {
            field: field.to_string(),
            order: bad,
        });
    }
    let roots: Vec<Scalar> = match field {
        Field::Rational => vec![field.one(), field.from_i64(-1)],
        Field::Prime(_) => field.elements().expect("finite field").into_iter().filter(|x| !x.is_zero()).collect(),
    };
    let gens = g.generators();
    let mut characters = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(chi) = extend_character(g, &gens, &choice, &roots, field) {
            characters.push(chi);
        }
        let mut k = 0;
        loop {
            if k == gens.len() {
                break;
            }
            choice[k] += 1;
            if choice[k] < roots.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == gens.len() {
            break;
        }
    }
    if characters.len() != g.order() {
        return Err(Error::MissingRootsOfUnity {
            field: field.to_string(),
            order: g.exponent(),
        });
    }
    let trivial = characters.iter().position(|c| c.iter().all(Scalar::is_one)).expect("trivial character");
    characters.swap(0, trivial);
    let n = characters.len();
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod: Vec<Scalar> = characters[a].iter().zip(&characters[b]).map(|(x, y)| x * y).collect();
            table[a][b] = characters
                .iter()
                .position(|c| *c == prod)
                .ok_or_else(|| Error::Structural("characters not closed under products".into()))?;
        }
    }
    let names = (0..n).map(|i| if i == 0 { "1".to_string() } else { format!("χ{i}") }).collect();
    Ok(DualGroup {
        group: Group::from_table(table, Some(names))?,
        characters,
    })
}

/// Extends generator values to a homomorphism, if consistent.
fn extend_character(g: &Group, gens: &[usize], choice: &[usize], roots: &[Scalar], field: Field) -> Option<Vec<Scalar>> {
    let mut values: Vec<Option<Scalar>> = vec![None; g.order()];
    values[g.identity()] = Some(field.one());
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let v = values[x].as_ref().expect("assigned") * &roots[choice[k]];
            match &values[y] {
                Some(w) if *w != v => return None,
                Some(_) => {}
                None => {
                    values[y] = Some(v);
                    frontier.push(y);
                }
            }
        }
    }
    let values: Vec<Scalar> = values.into_iter().collect::<Option<_>>()?;
    for a in g.elements() {
        for b in g.elements() {
            if values[g.mul(a, b)] != &values[a] * &values[b] {
                return None;
            }
        }
    }
    Some(values)
}

/// The dual group acting on `C^G` by `(F, θ) ↦ (F, θ_h · χ(h))`, identity on morphisms, with
/// identity coherence maps.
pub struct TwistAction {
    equivariant: Arc<dyn Category>,
    dual: DualGroup,
}

impl TwistAction {
    pub fn new(equivariant: Arc<dyn Category>, dual: DualGroup) -> Self {
        TwistAction { equivariant, dual }
    }

    pub fn dual(&self) -> &DualGroup {
        &self.dual
    }
}

impl Action for TwistAction {
    fn group(&self) -> &Group {
        &self.dual.group
    }

    fn category(&self) -> &Arc<dyn Category> {
        &self.equivariant
    }

    fn phi_obj(&self, chi: usize, x: &Obj) -> Result<Obj> {
        let (f, thetas) = structure(x)?;
        let twisted = thetas.iter().enumerate().map(|(h, t)| t.scale(self.dual.value(chi, h))).collect();
        Ok(Obj::Equivariant(Box::new(f.clone()), twisted))
    }

    fn phi_mor(&self, _: usize, _: &Obj, _: &Obj, f: &Mor) -> Result<Mor> {
        Ok(f.clone())
    }

    fn eps(&self, chi: usize, psi: usize, x: &Obj) -> Result<Mor> {
        let y = self.phi_obj(self.dual.group.mul(psi, chi), x)?;
        Ok(self.equivariant.identity(&y))
    }
}

/// `R(F, θ) = (⊕_{x ∈ G} F, θ^R)` where the `(gx, x)` block of `θ^R_g` is `θ_g`; counit
/// `e_x ↦ 1`, comultiplication `e_x ↦ e_x ⊗ e_x`.
pub struct RegularComonad {
    action: Arc<dyn Action>,
    equivariant: Arc<dyn Category>,
}

impl RegularComonad {
    pub fn new(eq: &Equivariantization) -> Self {
        RegularComonad {
            action: eq.action.clone(),
            equivariant: eq.equivariant.clone(),
        }
    }

    fn copies(&self, f: &Obj) -> Vec<Obj> {
        vec![f.clone(); self.action.group().order()]
    }
}

impl Comonad for RegularComonad {
    fn category(&self) -> &Arc<dyn Category> {
        &self.equivariant
    }

    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        let (f, thetas) = structure(x)?;
        let base = self.action.category();
        let group = self.action.group();
        let parts = self.copies(f);
        let sum = base.direct_sum(&parts)?;
        let mut out = Vec::new();
        for g in group.elements() {
            let gparts: Vec<Obj> = parts.iter().map(|p| self.action.phi_obj(g, p)).collect::<Result<_>>()?;
            let gsum = self.action.phi_obj(g, &sum)?;
            if base.direct_sum(&gparts)? != gsum {
                return Err(Error::Structural("action does not preserve the chosen direct sum".into()));
            }
            let mut th = base.zero_mor(&sum, &gsum);
            for x in group.elements() {
                let term = base.compose(
                    &base.injection(&gparts, group.mul(g, x))?,
                    &base.compose(&thetas[g], &base.projection(&parts, x)?),
                );
                th = th.add(&term);
            }
            out.push(th);
        }
        Ok(Obj::Equivariant(Box::new(sum), out))
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        let ((a, _), (b, _)) = (structure(x)?, structure(y)?);
        let base = self.action.category();
        let (pa, pb) = (self.copies(a), self.copies(b));
        let mut out = base.zero_mor(&base.direct_sum(&pa)?, &base.direct_sum(&pb)?);
        for i in self.action.group().elements() {
            out = out.add(&base.compose(&base.injection(&pb, i)?, &base.compose(f, &base.projection(&pa, i)?)));
        }
        Ok(out)
    }

    fn counit(&self, x: &Obj) -> Result<Mor> {
        let (f, _) = structure(x)?;
        let base = self.action.category();
        let parts = self.copies(f);
        let mut out = base.zero_mor(&base.direct_sum(&parts)?, f);
        for i in self.action.group().elements() {
            out = out.add(&base.projection(&parts, i)?);
        }
        Ok(out)
    }

    fn comult(&self, x: &Obj) -> Result<Mor> {
        let (f, _) = structure(x)?;
        let base = self.action.category();
        let n = self.action.group().order();
        let parts = self.copies(f);
        let rx = self.map_obj(x)?;
        let outer = vec![structure(&rx)?.0.clone(); n];
        let mut out = base.zero_mor(&base.direct_sum(&parts)?, &base.direct_sum(&outer)?);
        for i in 0..n {
            let into = base.compose(&base.injection(&outer, i)?, &base.injection(&parts, i)?);
            out = out.add(&base.compose(&into, &base.projection(&parts, i)?));
        }
        Ok(out)
    }
}

/// `β(𝔉) : p_* p^* 𝔉 → R 𝔉`; the block from summand `φ_h F` to copy `h⁻¹` is `θ_h⁻¹`.
pub fn beta(eq: &Equivariantization) -> Component {
    let action = eq.action.clone();
    Arc::new(move |x: &Obj| {
        let (f, thetas) = structure(x)?;
        let base = action.category();
        let group = action.group();
        let src: Vec<Obj> = group.elements().map(|h| action.phi_obj(h, f)).collect::<Result<_>>()?;
        let tgt = vec![f.clone(); group.order()];
        let mut out = base.zero_mor(&base.direct_sum(&src)?, &base.direct_sum(&tgt)?);
        for h in group.elements() {
            let inv = base
                .inverse(f, &src[h], &thetas[h])?
                .ok_or_else(|| Error::Input("structure map is not invertible".into()))?;
            let term = base.compose(
                &base.injection(&tgt, group.inv(h))?,
                &base.compose(&inv, &base.projection(&src, h)?),
            );
            out = out.add(&term);
        }
        Ok(out)
    })
}

/// The unique `Γ` (indexed `[x][χ]`) with `Γ_{x,χ} = χ(h) Γ_{hx,χ}` for all `h` and
/// `Σ_χ Γ_{x,χ} = δ_{x,e}`, found by solving the linear system.
pub fn gamma_coefficients(g: &Group, dual: &DualGroup, field: Field) -> Result<Vec<Vec<Scalar>>> {
    let n = g.order();
    let idx = |x: usize, chi: usize| x * n + chi;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for h in g.elements() {
        for x in g.elements() {
            for chi in 0..n {
                let mut row = vec![field.zero(); n * n];
                row[idx(x, chi)] = field.one();
                let hx = g.mul(h, x);
                row[idx(hx, chi)] = &row[idx(hx, chi)] - dual.value(chi, h);
                rows.push(row);
                rhs.push(field.zero());
            }
        }
    }
    for x in g.elements() {
        let mut row = vec![field.zero(); n * n];
        for chi in 0..n {
            row[idx(x, chi)] = field.one();
        }
        rows.push(row);
        rhs.push(if x == g.identity() { field.one() } else { field.zero() });
    }
    let m = Matrix::from_rows(field, rows);
    let sol = m
        .solve(&rhs)
        .ok_or_else(|| Error::Structural("no equivariant normalised γ exists".into()))?;
    if !m.nullspace().is_empty() {
        return Err(Error::Structural("γ is not uniquely determined".into()));
    }
    Ok((0..n).map(|x| (0..n).map(|chi| sol[idx(x, chi)].clone()).collect()).collect())
}

/// `γ̃(𝔉) : ⊕_χ φ_χ 𝔉 → R 𝔉` with `(x, χ)` block `Γ_{x,χ} · 1_F`.
pub fn gamma_tilde(eq: &Equivariantization, dual: &DualGroup, gamma: Vec<Vec<Scalar>>) -> Component {
    let base = eq.base.clone();
    let n = eq.action.group().order();
    let m = dual.order();
    Arc::new(move |x: &Obj| {
        let (f, _) = structure(x)?;
        let src = vec![f.clone(); m];
        let tgt = vec![f.clone(); n];
        let id = base.identity(f);
        let mut out = base.zero_mor(&base.direct_sum(&src)?, &base.direct_sum(&tgt)?);
        for (xi, row) in gamma.iter().enumerate() {
            for (chi, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = base.compose(
                    &base.injection(&tgt, xi)?,
                    &base.compose(&id.scale(c), &base.projection(&src, chi)?),
                );
                out = out.add(&term);
            }
        }
        Ok(out)
    })
}

/// Every piece of the chain `(C^G)^{G∨} → (C^G)_{T(q*,q_*)} → (C^G)_R → (C^G)_{T(p_*,p*)} → C`.
pub struct Reversion {
    pub eq: Equivariantization,
    pub dual: DualGroup,
    pub twisted: Equivariantization,
    pub gamma: Vec<Vec<Scalar>>,
    pub regular: Arc<dyn Comonad>,
    pub induced_comonad: Arc<dyn Comonad>,
    pub twist_comonad: Arc<dyn Comonad>,
    pub beta: Component,
    pub gamma_tilde: Component,
    pub functor: Arc<ReversionFunctor>,
}

impl Reversion {
    /// Assembles the chain for an action on a category whose listed `objects` are closed under
    /// splitting idempotents.
    pub fn new(action: Arc<dyn Action>, objects: Vec<Obj>, budget: Budget, seed: u64) -> Result<Self> {
        let field = action.category().field();
        let group = action.group().clone();
        let dual = dual_group(&group, field)?;
        match idempotent_completeness(action.category(), &objects, budget, seed)? {
            Completeness::Complete { .. } => {}
            Completeness::NotSplit { object, reason, .. } => {
                return Err(Error::Precondition(format!(
                    "listed objects are not idempotent complete: an idempotent on object {object} does not split ({reason})"
                )))
            }
            Completeness::Unknown { reason } => return Err(budget.exceeded(reason)),
        }
        let eq = Equivariantization::new(action)?;
        let twist: Arc<dyn Action> = Arc::new(TwistAction::new(eq.equivariant.clone(), dual.clone()));
        let twisted = Equivariantization::new(twist)?;
        let gamma = gamma_coefficients(&group, &dual, field)?;
        let regular: Arc<dyn Comonad> = Arc::new(RegularComonad::new(&eq));
        let induced_comonad = eq.induce_forget().comonad();
        let twist_comonad = twisted.forget_induce().comonad();
        let beta = beta(&eq);
        let gamma_tilde = gamma_tilde(&eq, &dual, gamma.clone());
        let functor = Arc::new(ReversionFunctor {
            eq: eq.clone(),
            twisted: twisted.clone(),
            beta: beta.clone(),
            gamma_tilde: gamma_tilde.clone(),
            objects,
            comodules: Arc::new(ComoduleCat::new(induced_comonad.clone())),
            budget,
            seed,
            cache: Mutex::new(HashMap::new()),
        });
        Ok(Reversion {
            eq,
            dual,
            twisted,
            gamma,
            regular,
            induced_comonad,
            twist_comonad,
            beta,
            gamma_tilde,
            functor,
        })
    }

    /// `(C^G)^{G∨}`.
    pub fn source(&self) -> &Arc<dyn Category> {
        &self.twisted.equivariant
    }

    /// `c ↦ (p_* c, ψ)` with `ψ_χ` acting on the summand `φ_h c` by `χ(h)⁻¹`.
    pub fn lift(&self, c: &Obj) -> Result<Obj> {
        let induced = self.eq.induce.map_obj(c)?;
        let base = &self.eq.base;
        let group = self.eq.action.group();
        let parts: Vec<Obj> = group.elements().map(|h| self.eq.action.phi_obj(h, c)).collect::<Result<_>>()?;
        let mut psis = Vec::new();
        for chi in 0..self.dual.order() {
            let mut d = base.zero_mor(&base.direct_sum(&parts)?, &base.direct_sum(&parts)?);
            for h in group.elements() {
                let s = self.dual.value(chi, h).inv().expect("character values are units");
                let term = base.compose(
                    &base.injection(&parts, h)?,
                    &base.compose(&base.identity(&parts[h]).scale(&s), &base.projection(&parts, h)?),
                );
                d = d.add(&term);
            }
            psis.push(d);
        }
        Ok(Obj::Equivariant(Box::new(induced), psis))
    }

    /// Checks the regular comonad laws and that `β` and `γ̃` are comonad isomorphisms on the
    /// given equivariant objects.
    pub fn check_isomorphisms(&self, equivariant_objects: &[Obj]) -> Result<ReversionChecks> {
        Ok(ReversionChecks {
            regular: check_comonad(&*self.regular, equivariant_objects)?,
            beta: check_comonad_iso(&self.induced_comonad, &self.regular, &self.beta, equivariant_objects)?,
            gamma: check_comonad_iso(&self.twist_comonad, &self.regular, &self.gamma_tilde, equivariant_objects)?,
        })
    }

    /// Full faithfulness on `sources` and essential surjectivity onto the listed objects of `C`.
    pub fn certify(&self, sources: &[Obj], budget: Budget, seed: u64) -> Result<EquivalenceCertificate> {
        check_equivalence(
            &*self.functor,
            &**self.source(),
            &*self.eq.base,
            sources,
            &self.functor.objects,
            budget,
            seed,
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReversionChecks {
    pub regular: CheckReport,
    pub beta: CheckReport,
    pub gamma: CheckReport,
}

impl ReversionChecks {
    pub fn passes(&self) -> bool {
        self.regular.passes() && self.beta.passes() && self.gamma.passes()
    }
}

/// The composite `(C^G)^{G∨} → C`. On objects the last step picks a listed object of `C`
/// whose comparison image is isomorphic to the transported comodule.
pub struct ReversionFunctor {
    eq: Equivariantization,
    twisted: Equivariantization,
    beta: Component,
    gamma_tilde: Component,
    objects: Vec<Obj>,
    comodules: Arc<ComoduleCat>,
    budget: Budget,
    seed: u64,
    cache: Mutex<HashMap<Obj, (Obj, Iso)>>,
}

impl ReversionFunctor {
    /// The `T(p_*,p^*)`-comodule obtained from `x` by the comparison functor and both
    /// transports.
    pub fn transported(&self, x: &Obj) -> Result<Obj> {
        let cg = &*self.eq.equivariant;
        let phi_q = self.twisted.forget_induce().comodule_comparison();
        let Obj::Comodule(f, h1) = phi_q.map_obj(x)? else {
            return Err(Error::Structural("comparison did not produce a comodule".into()));
        };
        let h2 = cg.compose(&(self.gamma_tilde)(&f)?, &h1);
        let tp = self.comodules.comonad();
        let rf = RegularComonad::new(&self.eq).map_obj(&f)?;
        let b = (self.beta)(&f)?;
        let binv = cg
            .inverse(&tp.map_obj(&f)?, &rf, &b)?
            .ok_or_else(|| Error::Structural("β is not invertible".into()))?;
        Ok(Obj::Comodule(f, cg.compose(&binv, &h2)))
    }

    /// The chosen object of `C` and an isomorphism from its comparison image to the
    /// transported comodule of `x`.
    pub fn resolve(&self, x: &Obj) -> Result<(Obj, Iso)> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(x) {
            return Ok(v.clone());
        }
        let target = self.transported(x)?;
        let phi_p = self.eq.induce_forget().comodule_comparison();
        let mut tried = 0;
        for (i, c) in self.objects.iter().enumerate() {
            let img = phi_p.map_obj(c)?;
            match find_iso(&*self.comodules, &img, &target, self.budget, self.seed.wrapping_add(i as u64))? {
                Search::Found(iso) => {
                    let out = (c.clone(), iso);
                    self.cache.lock().expect("cache lock").insert(x.clone(), out.clone());
                    return Ok(out);
                }
                Search::NoneFound(_) => {}
                Search::BudgetExceeded { tried: t } => tried += t,
            }
        }
        if tried > 0 {
            Err(self.budget.exceeded("preimage search for the comparison functor"))
        } else {
            Err(Error::Precondition(format!(
                "no listed object of the base category corresponds to {x:?}"
            )))
        }
    }
}

impl Functor for ReversionFunctor {
    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        Ok(self.resolve(x)?.0)
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        let (cx, ix) = self.resolve(x)?;
        let (cy, iy) = self.resolve(y)?;
        let base = &*self.eq.base;
        let cg = &*self.eq.equivariant;
        let g = cg.compose(&iy.backward, &cg.compose(f, &ix.forward));
        let basis = base.hom_basis(&cx, &cy)?;
        if basis.is_empty() {
            return if g.is_zero() {
                Ok(base.zero_mor(&cx, &cy))
            } else {
                Err(Error::Structural("morphism has no preimage".into()))
            };
        }
        let images: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|b| self.eq.induce.map_mor(&cx, &cy, b).map(|m| m.coords))
            .collect::<Result<_>>()?;
        let m = Matrix::from_columns(base.field(), g.coords.len(), &images);
        let c = m
            .solve(&g.coords)
            .ok_or_else(|| Error::Structural("morphism has no preimage under p_*".into()))?;
        Ok(combination(&c, &basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::PresentedAction;
    use crate::equivar::equivariant_structures;
    use crate::lincat::envelope::Envelope;
    use crate::lincat::presentation::Presentation;

    fn trivial_z2() -> Arc<dyn Action> {
        let env = Envelope::new(Arc::new(Presentation::ground_field(Field::Prime(5))));
        Arc::new(PresentedAction::trivial(env, Group::cyclic(2)).unwrap())
    }

    #[test]
    fn characters_of_small_cyclic_groups() {
        let d = dual_group(&Group::cyclic(2), Field::Prime(5)).unwrap();
        let f = Field::Prime(5);
        assert_eq!(d.characters, vec![vec![f.one(), f.one()], vec![f.one(), f.from_i64(4)]]);
        let d3 = dual_group(&Group::cyclic(3), Field::Prime(7)).unwrap();
        assert_eq!(d3.order(), 3);
        let err = dual_group(&Group::cyclic(3), Field::Rational).unwrap_err();
        assert!(matches!(err, Error::MissingRootsOfUnity { order: 3, .. }));
    }

    #[test]
    fn gamma_matches_closed_form() {
        for (n, p) in [(2usize, 5u64), (3, 7), (4, 5)] {
            let g = Group::cyclic(n);
            let f = Field::Prime(p);
            let d = dual_group(&g, f).unwrap();
            let gamma = gamma_coefficients(&g, &d, f).unwrap();
            let inv_n = f.from_i64(n as i64).inv().unwrap();
            for x in g.elements() {
                for chi in 0..n {
                    let expected = &d.value(chi, x).inv().unwrap() * &inv_n;
                    assert_eq!(gamma[x][chi], expected);
                }
            }
        }
    }

    #[test]
    fn sign_twist_swaps_the_two_lines() {
        let action = trivial_z2();
        let eq = Equivariantization::new(action.clone()).unwrap();
        let d = dual_group(action.group(), Field::Prime(5)).unwrap();
        let twist = TwistAction::new(eq.equivariant.clone(), d);
        let lines = equivariant_structures(&*action, &Obj::base(&[0]), Budget::default()).unwrap().found;
        assert_eq!(lines.len(), 2);
        assert_eq!(twist.phi_obj(1, &lines[0]).unwrap(), lines[1]);
        assert_eq!(twist.phi_obj(1, &lines[1]).unwrap(), lines[0]);
    }

    #[test]
    fn comonad_isomorphisms_and_round_trip() {
        let cs = vec![Obj::base(&[]), Obj::base(&[0]), Obj::base(&[0, 0])];
        let r = Reversion::new(trivial_z2(), cs.clone(), Budget::default(), 3).unwrap();
        let lines = equivariant_structures(&*r.eq.action, &Obj::base(&[0]), Budget::default()).unwrap().found;
        let checks = r.check_isomorphisms(&lines).unwrap();
        assert!(checks.passes(), "{checks:?}");
        for c in &cs {
            let lifted = r.lift(c).unwrap();
            assert!(r.source().contains(&lifted));
            let back = r.functor.map_obj(&lifted).unwrap();
            assert!(find_iso(&*r.eq.base, &back, c, Budget::default(), 0).unwrap().is_found());
        }
        let sources: Vec<Obj> = cs.iter().map(|c| r.lift(c).unwrap()).collect();
        let cert = r.certify(&sources, Budget::default(), 5).unwrap();
        assert_eq!(cert.verdict(), crate::lincat::equivalence::Verdict::Equivalence, "{:?}", cert.summary());
    }

    #[test]
    fn incomplete_base_is_rejected() {
        let err = Reversion::new(trivial_z2(), vec![Obj::base(&[0, 0])], Budget::default(), 0);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
