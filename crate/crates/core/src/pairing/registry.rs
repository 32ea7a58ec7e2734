use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::types::TypeExpr;

const DEFAULT_REGISTRY: &str = include_str!("../../data/type_registry.json");

const PRIMITIVES: &[&str] = &[
    "byte", "short", "int", "long", "float", "double", "boolean", "char", "void", "var",
];

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("cannot read type registry {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed type registry: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("supertype cycle: {0}")]
    Cycle(String),
}

/// On-disk registry layout.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegistryFile {
    /// Type -> direct supertypes.
    pub supertypes: BTreeMap<String, Vec<String>>,
    /// Generic containers whose first type argument is the element type.
    pub collections: Vec<String>,
}

impl RegistryFile {
    pub fn merge(&mut self, other: RegistryFile) {
        for (ty, supers) in other.supertypes {
            let entry = self.supertypes.entry(ty).or_default();
            for s in supers {
                if !entry.contains(&s) {
                    entry.push(s);
                }
            }
        }
        for c in other.collections {
            if !self.collections.contains(&c) {
                self.collections.push(c);
            }
        }
    }
}

/// Known type hierarchy and container types, keyed by simple type name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeRegistry {
    /// Transitive closure of the supertype relation.
    supertypes: BTreeMap<String, BTreeSet<String>>,
    collections: BTreeSet<String>,
    known: BTreeSet<String>,
}

impl Default for TypeRegistry {
    fn default() -> Self {
        Self::from_file(Self::builtin_file()).expect("built-in type registry is acyclic")
    }
}

impl TypeRegistry {
    pub fn builtin_file() -> RegistryFile {
        serde_json::from_str(DEFAULT_REGISTRY).expect("built-in type registry parses")
    }

    pub fn from_json(text: &str) -> Result<Self, RegistryError> {
        Self::from_file(serde_json::from_str(text)?)
    }

    /// Built-in registry extended with a user file.
    pub fn with_user_file(path: &Path) -> Result<Self, RegistryError> {
        let text = std::fs::read_to_string(path).map_err(|source| RegistryError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut file = Self::builtin_file();
        file.merge(serde_json::from_str(&text)?);
        Self::from_file(file)
    }

    pub fn from_file(file: RegistryFile) -> Result<Self, RegistryError> {
        let direct: BTreeMap<String, BTreeSet<String>> = file
            .supertypes
            .iter()
            .map(|(k, v)| (k.clone(), v.iter().cloned().collect()))
            .collect();
        if let Some(cycle) = find_cycle(&direct) {
            return Err(RegistryError::Cycle(cycle.join(" -> ")));
        }

        let mut closure = BTreeMap::new();
        for ty in direct.keys() {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<&String> = direct[ty].iter().collect();
            while let Some(s) = stack.pop() {
                if seen.insert(s.clone()) {
                    if let Some(next) = direct.get(s) {
                        stack.extend(next.iter());
                    }
                }
            }
            closure.insert(ty.clone(), seen);
        }

        let mut known: BTreeSet<String> = PRIMITIVES.iter().map(|s| s.to_string()).collect();
        for (ty, supers) in &direct {
            known.insert(ty.clone());
            known.extend(supers.iter().cloned());
        }
        known.extend(file.collections.iter().cloned());

        Ok(Self {
            supertypes: closure,
            collections: file.collections.into_iter().collect(),
            known,
        })
    }

    /// Strict, transitive subtype test on simple names.
    pub fn is_subtype(&self, sub: &str, sup: &str) -> bool {
        self.supertypes.get(sub).is_some_and(|s| s.contains(sup))
    }

    pub fn is_collection(&self, base: &str) -> bool {
        self.collections.contains(base)
    }

    pub fn knows(&self, ty: &TypeExpr) -> bool {
        self.known.contains(&ty.base)
    }

    /// Element type of an array or registered container with a type argument.
    pub fn element_of(&self, ty: &TypeExpr) -> Option<TypeExpr> {
        if ty.dims > 0 {
            return ty.array_element();
        }
        if self.is_collection(&ty.base) {
            return ty.first_arg().cloned();
        }
        None
    }

    /// Whether a declared type is an array or a registered container.
    pub fn is_container(&self, ty: &TypeExpr) -> bool {
        ty.dims > 0 || self.is_collection(&ty.base)
    }

    pub fn type_names(&self) -> impl Iterator<Item = &String> {
        self.known.iter()
    }
}

fn find_cycle(graph: &BTreeMap<String, BTreeSet<String>>) -> Option<Vec<String>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    let mut marks: BTreeMap<&str, Mark> = BTreeMap::new();

    for start in graph.keys() {
        if marks.contains_key(start.as_str()) {
            continue;
        }
        // iterative DFS keeping the active path
        let mut path: Vec<&str> = vec![start];
        let mut iters: Vec<std::collections::btree_set::Iter<String>> = vec![graph[start].iter()];
        marks.insert(start, Mark::Active);
        while let Some(it) = iters.last_mut() {
            match it.next() {
                Some(next) => match marks.get(next.as_str()) {
                    Some(Mark::Active) => {
                        let pos = path.iter().position(|p| *p == next).unwrap_or(0);
                        let mut cycle: Vec<String> = path[pos..].iter().map(|s| s.to_string()).collect();
                        cycle.push(next.clone());
                        return Some(cycle);
                    }
                    Some(Mark::Done) => {}
                    None => {
                        marks.insert(next, Mark::Active);
                        path.push(next);
                        match graph.get(next) {
                            Some(children) => iters.push(children.iter()),
                            None => {
                                marks.insert(next, Mark::Done);
                                path.pop();
                            }
                        }
                    }
                },
                None => {
                    iters.pop();
                    if let Some(done) = path.pop() {
                        marks.insert(done, Mark::Done);
                    }
                }
            }
        }
    }
    None
}
