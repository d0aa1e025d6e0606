//! Small ready-made actions used by the examples, the CLI fixtures and the test suites.

use std::sync::Arc;

use crate::action::{Action, PresentedAction};
use crate::error::Result;
use crate::field::Field;
use crate::group::Group;
use crate::lincat::category::materialize;
use crate::lincat::envelope::{Envelope, Obj};
use crate::lincat::presentation::Presentation;

/// An action together with a designated list of objects of the acted-on category.
#[derive(Clone)]
pub struct Instance {
    pub name: String,
    pub action: Arc<dyn Action>,
    pub objects: Vec<Obj>,
}

impl Instance {
    fn new(name: &str, action: PresentedAction, objects: Vec<Obj>) -> Self {
        Instance {
            name: name.into(),
            action: Arc::new(action),
            objects,
        }
    }
}

fn vect(field: Field) -> Envelope {
    Envelope::new(Arc::new(Presentation::ground_field(field)))
}

fn lines() -> Vec<Obj> {
    vec![Obj::base(&[]), Obj::base(&[0]), Obj::base(&[0, 0])]
}

/// The trivial group acting on vector spaces of dimension at most 2.
pub fn trivial_group(field: Field) -> Result<Instance> {
    let a = PresentedAction::trivial(vect(field), Group::cyclic(1))?;
    Ok(Instance::new("trivial group", a, lines()))
}

/// `ℤ/2` acting trivially (strict `ε`) on vector spaces of dimension at most 2.
pub fn trivial_z2(field: Field) -> Result<Instance> {
    let a = PresentedAction::trivial(vect(field), Group::cyclic(2))?;
    Ok(Instance::new("trivial Z/2", a, lines()))
}

/// `ℤ/2` swapping `X1` and `X2` in the category with `Hom(Xi, Xj) = k δij`.
pub fn swap_z2(field: Field) -> Result<Instance> {
    let env = Envelope::new(Arc::new(Presentation::discrete(field, &["X1", "X2"])));
    let a = PresentedAction::from_permutation(env, Group::cyclic(2), vec![vec![0, 1], vec![1, 0]])?;
    let objects = vec![Obj::base(&[]), Obj::base(&[0]), Obj::base(&[1]), Obj::base(&[0, 1])];
    Ok(Instance::new("swap Z/2", a, objects))
}

/// The swap action with `ε_{g,g}(X1)` negated, which breaks the cocycle condition.
pub fn broken_swap_z2(field: Field) -> Result<Instance> {
    let inst = swap_z2(field)?;
    let env = Envelope::new(Arc::new(Presentation::discrete(field, &["X1", "X2"])));
    let a = PresentedAction::from_permutation(env.clone(), Group::cyclic(2), vec![vec![0, 1], vec![1, 0]])?
        .with_eps(1, 1, 0, env.identity(&[0]).neg())?;
    Ok(Instance::new("broken swap Z/2", a, inst.objects))
}

/// `ℤ/3` cyclically permuting three objects with `Hom(Xi, Xj) = k δij`.
pub fn cyclic_z3(field: Field) -> Result<Instance> {
    let env = Envelope::new(Arc::new(Presentation::discrete(field, &["X0", "X1", "X2"])));
    let perm = (0..3).map(|g| (0..3).map(|x| (x + g) % 3).collect()).collect();
    let a = PresentedAction::from_permutation(env, Group::cyclic(3), perm)?;
    let objects = vec![Obj::base(&[]), Obj::base(&[0]), Obj::base(&[1]), Obj::base(&[2])];
    Ok(Instance::new("cyclic Z/3", a, objects))
}

/// Even-dimensional vector spaces: one object `V = k²` with `End V` the 2×2 matrices, acted on
/// trivially by `ℤ/2`. Objects `0` and `V`.
pub fn even_dimensional(field: Field) -> Result<Instance> {
    let m = materialize(&vect(field), &[Obj::base(&[0, 0])], &["V".to_string()])?;
    let env = Envelope::new(Arc::new(m.presentation));
    let a = PresentedAction::trivial(env, Group::cyclic(2))?;
    Ok(Instance::new("even-dimensional", a, vec![Obj::base(&[]), Obj::base(&[0])]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::check_action;

    #[test]
    fn instances_are_valid_actions() {
        let f = Field::Prime(5);
        for inst in [trivial_group(f), trivial_z2(f), swap_z2(f), even_dimensional(f)] {
            let inst = inst.unwrap();
            let r = check_action(&inst.action, &inst.objects).unwrap();
            assert!(r.passes(), "{}: {r:?}", inst.name);
        }
        let z3 = cyclic_z3(Field::Prime(7)).unwrap();
        assert!(check_action(&z3.action, &z3.objects).unwrap().passes());
    }

    #[test]
    fn broken_swap_fails_the_cocycle() {
        let inst = broken_swap_z2(Field::Prime(5)).unwrap();
        let r = check_action(&inst.action, &inst.objects).unwrap();
        assert!(!r.cocycle_failures.is_empty());
    }
}
