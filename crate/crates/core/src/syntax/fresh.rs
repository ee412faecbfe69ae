use std::collections::HashSet;
use std::sync::Arc;

use super::{signature, ProblemInstance};

/// Generator of names that do not clash with anything already in an instance.
#[derive(Clone, Debug, Default)]
pub struct FreshNames {
    used: HashSet<Arc<str>>,
}

impl FreshNames {
    pub fn for_instance(instance: &ProblemInstance) -> Self {
        let sig = signature(instance);
        let mut names = FreshNames::default();
        for n in sig.atoms.iter().chain(&sig.roles).chain(&sig.individuals) {
            names.reserve(n);
        }
        for op in &instance.operators {
            names.reserve(&op.name);
        }
        names
    }

    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.into());
    }

    pub fn is_used(&self, name: &str) -> bool {
        self.used.contains(name)
    }

    /// Returns `base` if it is free, otherwise `base1`, `base2`, …
    pub fn fresh(&mut self, base: &str) -> Arc<str> {
        let name: Arc<str> = if !self.is_used(base) {
            base.into()
        } else {
            (1..)
                .map(|k| format!("{base}{k}"))
                .find(|n| !self.is_used(n))
                .expect("unbounded counter")
                .into()
        };
        self.used.insert(name.clone());
        name
    }

    /// Returns `base1`, `base2`, … skipping used names, never `base` itself.
    pub fn numbered(&mut self, base: &str) -> Arc<str> {
        let name: Arc<str> = (1..)
            .map(|k| format!("{base}{k}"))
            .find(|n| !self.is_used(n))
            .expect("unbounded counter")
            .into();
        self.used.insert(name.clone());
        name
    }
}
