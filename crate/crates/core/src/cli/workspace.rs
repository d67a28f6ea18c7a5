use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finring::{FinAlgebra, Mat, PrimeField};
use crate::xmod::{ActionTable, BXModMorphism, BXModObj, Braiding};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedAction {
    pub base: String,
    pub carrier: String,
    pub table: ActionTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMap {
    pub source: String,
    pub target: String,
    pub matrix: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedBraiding {
    pub base: String,
    pub carrier: String,
    pub braiding: Braiding,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedObject {
    pub carrier: String,
    pub base: String,
    pub boundary: String,
    pub action: String,
    pub braiding: String,
    pub object: Arc<BXModObj>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMorphism {
    pub source: String,
    pub target: String,
    pub map: String,
    pub morphism: BXModMorphism,
}

/// Every named entity of a `.bxm` document, resolved and validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Workspace {
    pub field: PrimeField,
    pub algebras: BTreeMap<String, FinAlgebra>,
    pub actions: BTreeMap<String, NamedAction>,
    pub maps: BTreeMap<String, NamedMap>,
    pub braidings: BTreeMap<String, NamedBraiding>,
    pub objects: BTreeMap<String, NamedObject>,
    pub morphisms: BTreeMap<String, NamedMorphism>,
}

impl Workspace {
    pub fn new(field: PrimeField) -> Self {
        Workspace {
            field,
            algebras: BTreeMap::new(),
            actions: BTreeMap::new(),
            maps: BTreeMap::new(),
            braidings: BTreeMap::new(),
            objects: BTreeMap::new(),
            morphisms: BTreeMap::new(),
        }
    }

    pub fn object(&self, name: &str) -> Option<&Arc<BXModObj>> {
        self.objects.get(name).map(|o| &o.object)
    }

    pub fn morphism(&self, name: &str) -> Option<&BXModMorphism> {
        self.morphisms.get(name).map(|m| &m.morphism)
    }

    /// Name of the object whose data equals `o`, if any.
    pub fn object_name(&self, o: &Arc<BXModObj>) -> Option<&str> {
        self.objects
            .iter()
            .find(|(_, n)| Arc::ptr_eq(&n.object, o) || *n.object == **o)
            .map(|(k, _)| k.as_str())
    }

    /// Objects grouped by base algebra name, each group in name order.
    pub fn catalogues(&self) -> BTreeMap<String, Vec<(String, Arc<BXModObj>)>> {
        let mut out: BTreeMap<String, Vec<(String, Arc<BXModObj>)>> = BTreeMap::new();
        for (name, o) in &self.objects {
            out.entry(o.base.clone()).or_default().push((name.clone(), o.object.clone()));
        }
        out
    }

    fn fresh<T>(map: &BTreeMap<String, T>, name: &str) -> String {
        if !map.contains_key(name) {
            return name.to_string();
        }
        (2..).map(|k| format!("{name}_{k}")).find(|n| !map.contains_key(n)).expect("unbounded")
    }

    /// Name of an algebra equal to `a`, registering it as `preferred` (or a
    /// fresh variant) when there is none.
    pub fn add_algebra(&mut self, preferred: &str, a: &FinAlgebra) -> String {
        if let Some((name, _)) = self.algebras.iter().find(|(_, b)| *b == a) {
            return name.clone();
        }
        let name = Self::fresh(&self.algebras, preferred);
        self.algebras.insert(name.clone(), a.clone());
        name
    }

    /// Registers `o` under `name` (or a fresh variant), with its structure
    /// maps named after it. Returns the name used.
    pub fn add_object(&mut self, name: &str, o: Arc<BXModObj>) -> Result<String> {
        if o.field() != self.field {
            return Err(Error::precondition("object is over a different field"));
        }
        let name = Self::fresh(&self.objects, name);
        let base = self.add_algebra(&format!("{name}_base"), o.base());
        let carrier = self.add_algebra(&format!("{name}_carrier"), o.carrier());
        let action = Self::fresh(&self.actions, &format!("{name}_action"));
        self.actions.insert(
            action.clone(),
            NamedAction { base: base.clone(), carrier: carrier.clone(), table: o.action().clone() },
        );
        let boundary = Self::fresh(&self.maps, &format!("{name}_boundary"));
        self.maps.insert(
            boundary.clone(),
            NamedMap { source: carrier.clone(), target: base.clone(), matrix: o.boundary().clone() },
        );
        let braiding = Self::fresh(&self.braidings, &format!("{name}_braiding"));
        self.braidings.insert(
            braiding.clone(),
            NamedBraiding { base: base.clone(), carrier: carrier.clone(), braiding: o.braiding().clone() },
        );
        self.objects.insert(name.clone(), NamedObject { carrier, base, boundary, action, braiding, object: o });
        Ok(name)
    }

    /// Registers `m` under `name` (or a fresh variant); both ends must
    /// already be named objects. Returns the name used.
    pub fn add_morphism(&mut self, name: &str, m: BXModMorphism) -> Result<String> {
        let end = |o: &Arc<BXModObj>| {
            self.object_name(o)
                .map(str::to_string)
                .ok_or_else(|| Error::precondition(format!("morphism '{name}' has an unnamed end")))
        };
        let (source, target) = (end(m.source())?, end(m.target())?);
        let name = Self::fresh(&self.morphisms, name);
        let map = Self::fresh(&self.maps, &format!("{name}_map"));
        self.maps.insert(
            map.clone(),
            NamedMap {
                source: self.objects[&source].carrier.clone(),
                target: self.objects[&target].carrier.clone(),
                matrix: m.map().clone(),
            },
        );
        // rebind the ends to the registered objects so ptr-based lookups agree
        let morphism = BXModMorphism::new(
            self.objects[&source].object.clone(),
            self.objects[&target].object.clone(),
            m.map().clone(),
        )?;
        self.morphisms.insert(name.clone(), NamedMorphism { source, target, map, morphism });
        Ok(name)
    }
}
