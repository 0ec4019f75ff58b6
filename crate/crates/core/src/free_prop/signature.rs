use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    /// Number of inputs.
    pub m: usize,
    /// Number of outputs.
    pub n: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, m: usize, n: usize) -> Self {
        Generator { name: name.into(), m, n }
    }
}

/// A finite set of named generators, each with an arity and a coarity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SignatureDoc", into = "SignatureDoc")]
pub struct Signature {
    generators: BTreeMap<String, Generator>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignatureDoc {
    generators: Vec<Generator>,
}

impl TryFrom<SignatureDoc> for Signature {
    type Error = Error;

    fn try_from(doc: SignatureDoc) -> Result<Self> {
        Signature::new(doc.generators)
    }
}

impl From<Signature> for SignatureDoc {
    fn from(sig: Signature) -> Self {
        SignatureDoc { generators: sig.generators.into_values().collect() }
    }
}

impl Signature {
    pub fn new(generators: impl IntoIterator<Item = Generator>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for g in generators {
            if map.contains_key(&g.name) {
                return Err(Error::Parse(format!("generator `{}` is declared twice", g.name)));
            }
            map.insert(g.name.clone(), g);
        }
        Ok(Signature { generators: map })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn get(&self, name: &str) -> Result<&Generator> {
        self.generators.get(name).ok_or_else(|| Error::UnknownGenerator(name.to_owned()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.generators.contains_key(name)
    }

    /// Generators sorted by name.
    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators.values()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when every generator has at least one input.
    pub fn nonempty_inputs(&self) -> bool {
        self.generators.values().all(|g| g.m >= 1)
    }

    /// Fails unless a vertex with this label and shape is allowed.
    pub fn check_vertex(&self, name: &str, arity: usize, coarity: usize) -> Result<()> {
        let g = self.get(name)?;
        if (g.m, g.n) != (arity, coarity) {
            return Err(Error::ArityMismatch(format!(
                "generator `{name}` is ({}, {}) but labels a ({arity}, {coarity})-vertex",
                g.m, g.n
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signature_files() {
        let sig = Signature::from_json(r#"{"generators": [{"name": "p", "m": 2, "n": 1}]}"#).unwrap();
        assert_eq!(sig.get("p").unwrap(), &Generator::new("p", 2, 1));
        assert!(sig.nonempty_inputs());
        assert!(sig.check_vertex("p", 1, 2).is_err());
    }

    #[test]
    fn rejects_duplicate_names() {
        assert!(Signature::from_json(
            r#"{"generators": [{"name": "p", "m": 2, "n": 1}, {"name": "p", "m": 1, "n": 1}]}"#
        )
        .is_err());
    }
}
