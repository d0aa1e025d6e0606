//! Instance documents: JSON describing a field, a presentation or a ready-made instance, a
//! group action, designated objects and budgets.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::action::PresentedAction;
use crate::dg::graded::GradedSwap;
use crate::dg::presentation::DgPresentation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::Group;
use crate::instances::{self, Instance};
use crate::lincat::envelope::{Envelope, Obj};
use crate::lincat::presentation::Presentation;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default)]
    pub name: Option<String>,
    /// `"Q"` or `{"prime": p}`.
    pub field: FieldSpec,
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// A ready-made instance; excludes `category`.
    #[serde(default)]
    pub instance: Option<String>,
    #[serde(default)]
    pub category: Option<CategorySpec>,
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub action: Option<ActionSpec>,
    /// Formal sums of object names.
    #[serde(default)]
    pub objects: Option<Vec<Vec<String>>>,
    /// Read the gradings and differentials given with the Hom spaces.
    #[serde(default)]
    pub dg: bool,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Prime { prime: u64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    #[serde(default)]
    pub homs: Vec<HomSpec>,
    /// Identity of each object as scalars on its endomorphism basis labels.
    #[serde(default)]
    pub identities: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub products: Vec<ProductSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub from: String,
    pub to: String,
    pub basis: Vec<String>,
    #[serde(default)]
    pub degrees: Option<Vec<i64>>,
    /// `d(label)` as scalars on labels of the same Hom space.
    #[serde(default)]
    pub differential: BTreeMap<String, BTreeMap<String, String>>,
}

/// `g ∘ f` for basis vectors named `[source, target, label]`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub g: [String; 3],
    pub f: [String; 3],
    pub result: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic(usize),
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    /// `permutation[g][i]` names the image of the `i`-th object under `g`.
    pub permutation: Vec<Vec<String>>,
    /// Rescales individual components `ε_{g,h}(X)` of the strict coherence data.
    #[serde(default)]
    pub eps_scale: Vec<EpsScale>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpsScale {
    pub g: usize,
    pub h: usize,
    pub object: String,
    pub scale: String,
}

/// A document resolved into validated inputs.
pub enum Loaded {
    Linear(Instance),
    Graded(GradedSwap),
    Dg { name: String, presentation: DgPresentation },
}

pub struct Input {
    pub field: Field,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    pub loaded: Loaded,
}

impl Input {
    pub fn name(&self) -> String {
        match &self.loaded {
            Loaded::Linear(i) => i.name.clone(),
            Loaded::Graded(_) => "graded-swap".into(),
            Loaded::Dg { name, .. } => name.clone(),
        }
    }
}

/// Line (1-based) of the first occurrence of `"key"` in `src`.
fn line_of(src: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    src.find(&needle).map_or(1, |pos| src[..pos].matches('\n').count() + 1)
}

fn at(src: &str, key: &str, msg: impl Into<Message>) -> Error {
    Error::Input(format!("line {}: {}", line_of(src, key), msg.into().0))
}

struct Message(String);

impl From<Error> for Message {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(m) => Message(m),
            other => Message(other.to_string()),
        }
    }
}

impl From<String> for Message {
    fn from(s: String) -> Self {
        Message(s)
    }
}

impl From<&str> for Message {
    fn from(s: &str) -> Self {
        Message(s.into())
    }
}

pub const BUILTINS: [&str; 7] = [
    "trivial-group",
    "trivial-z2",
    "swap-z2",
    "broken-swap-z2",
    "cyclic-z3",
    "even-dimensional",
    "graded-swap",
];

pub fn parse(src: &str) -> Result<Input> {
    let doc: Document = serde_json::from_str(src)
        .map_err(|e| Error::Input(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let field = match &doc.field {
        FieldSpec::Name(n) if n == "Q" || n == "rational" => Field::Rational,
        FieldSpec::Name(n) => return Err(at(src, "field", format!("unknown field {n:?}; use \"Q\" or {{\"prime\": p}}"))),
        FieldSpec::Prime { prime } => Field::prime(*prime).map_err(|e| at(src, "prime", e))?,
    };
    let loaded = match (&doc.instance, &doc.category) {
        (Some(_), Some(_)) => return Err(at(src, "instance", "give either \"instance\" or \"category\", not both")),
        (None, None) => return Err(Error::Input("line 1: one of \"instance\" or \"category\" is required".into())),
        (Some(name), None) => builtin(src, name, field)?,
        (None, Some(cat)) => custom(src, &doc, cat, field)?,
    };
    Ok(Input {
        field,
        budget: doc.budget,
        seed: doc.seed,
        loaded,
    })
}

fn builtin(src: &str, name: &str, field: Field) -> Result<Loaded> {
    let wrap = |r: Result<Instance>| r.map(Loaded::Linear).map_err(|e| at(src, "instance", e));
    match name {
        "trivial-group" => wrap(instances::trivial_group(field)),
        "trivial-z2" => wrap(instances::trivial_z2(field)),
        "swap-z2" => wrap(instances::swap_z2(field)),
        "broken-swap-z2" => wrap(instances::broken_swap_z2(field)),
        "cyclic-z3" => wrap(instances::cyclic_z3(field)),
        "even-dimensional" => wrap(instances::even_dimensional(field)),
        "graded-swap" => GradedSwap::new(field).map(Loaded::Graded).map_err(|e| at(src, "instance", e)),
        other => Err(at(src, "instance", format!("unknown instance {other:?}; known: {}", BUILTINS.join(", ")))),
    }
}

fn custom(src: &str, doc: &Document, cat: &CategorySpec, field: Field) -> Result<Loaded> {
    let index = |name: &str, key: &str| {
        cat.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| at(src, key, format!("unknown object {name:?}")))
    };
    let mut pres = Presentation::new(field, cat.objects.clone());
    let n = cat.objects.len();
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); n * n];
    for h in &cat.homs {
        let (x, y) = (index(&h.from, "homs")?, index(&h.to, "homs")?);
        if !labels[x * n + y].is_empty() {
            return Err(at(src, "homs", format!("hom({}, {}) given twice", h.from, h.to)));
        }
        labels[x * n + y] = h.basis.clone();
        pres.set_hom(x, y, h.basis.clone());
    }
    let label = |x: usize, y: usize, l: &str, key: &str| {
        labels[x * n + y]
            .iter()
            .position(|b| b == l)
            .ok_or_else(|| at(src, key, format!("{l:?} is not a basis label of hom({}, {})", cat.objects[x], cat.objects[y])))
    };
    let vector = |x: usize, y: usize, m: &BTreeMap<String, String>, key: &str| -> Result<Vec<_>> {
        let mut v = vec![field.zero(); labels[x * n + y].len()];
        for (l, s) in m {
            v[label(x, y, l, key)?] = field.parse(s).map_err(|e| at(src, key, e))?;
        }
        Ok(v)
    };
    for (name, m) in &cat.identities {
        let x = index(name, "identities")?;
        pres.set_identity(x, vector(x, x, m, "identities")?);
    }
    if let Some(o) = cat.objects.iter().find(|o| !cat.identities.contains_key(*o)) {
        return Err(at(src, "identities", format!("no identity given for {o:?}")));
    }
    for p in &cat.products {
        let (gx, gy) = (index(&p.g[0], "products")?, index(&p.g[1], "products")?);
        let (fx, fy) = (index(&p.f[0], "products")?, index(&p.f[1], "products")?);
        if fy != gx {
            return Err(at(src, "products", format!("{} ∘ {} is not composable", p.g[2], p.f[2])));
        }
        let a = label(gx, gy, &p.g[2], "products")?;
        let b = label(fx, fy, &p.f[2], "products")?;
        let v = vector(fx, gy, &p.result, "products")?;
        pres.set_product((fx, fy, gy), a, b, v.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect());
    }
    pres.check_shapes().map_err(|e| at(src, "category", e))?;
    let name = doc.name.clone().unwrap_or_else(|| "document".into());
    if doc.dg {
        let mut dg = DgPresentation::new(pres);
        for h in &cat.homs {
            let (x, y) = (index(&h.from, "homs")?, index(&h.to, "homs")?);
            if let Some(d) = &h.degrees {
                dg.set_degrees(x, y, d.clone()).map_err(|e| at(src, "degrees", e))?;
            }
            for (l, m) in &h.differential {
                let a = label(x, y, l, "differential")?;
                let v = vector(x, y, m, "differential")?;
                dg.set_differential(x, y, a, v.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect())
                    .map_err(|e| at(src, "differential", e))?;
            }
        }
        return Ok(Loaded::Dg { name, presentation: dg });
    }
    let group = match &doc.group {
        None => Group::cyclic(1),
        Some(GroupSpec::Cyclic(0)) => return Err(at(src, "cyclic", "a cyclic group needs order at least 1")),
        Some(GroupSpec::Cyclic(k)) => Group::cyclic(*k),
        Some(GroupSpec::Table { table, names }) => Group::from_table(table.clone(), names.clone()).map_err(|e| at(src, "group", e))?,
    };
    let env = Envelope::new(Arc::new(pres));
    let action = match &doc.action {
        None => PresentedAction::trivial(env.clone(), group).map_err(|e| at(src, "group", e))?,
        Some(data) => {
            let perm = data
                .permutation
                .iter()
                .map(|row| row.iter().map(|o| index(o, "permutation")).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let mut a = PresentedAction::from_permutation(env.clone(), group, perm).map_err(|e| at(src, "action", e))?;
            for s in &data.eps_scale {
                let x = index(&s.object, "eps_scale")?;
                let c = field.parse(&s.scale).map_err(|e| at(src, "eps_scale", e))?;
                a = a.with_eps(s.g, s.h, x, env.identity(&[x]).scale(&c)).map_err(|e| at(src, "eps_scale", e))?;
            }
            a
        }
    };
    let objects = match &doc.objects {
        Some(list) => list
            .iter()
            .map(|sum| sum.iter().map(|o| index(o, "objects")).collect::<Result<Vec<_>>>().map(|v| Obj::base(&v)))
            .collect::<Result<Vec<_>>>()?,
        None => (0..n).map(|i| Obj::base(&[i])).collect(),
    };
    Ok(Loaded::Linear(Instance {
        name,
        action: Arc::new(action),
        objects,
    }))
}
