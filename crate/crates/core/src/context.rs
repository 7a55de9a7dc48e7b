//! Variable contexts shared by polynomials and ideals.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// What a variable stands for in the computations of this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// Coordinates x1..xd of the ambient space.
    Base,
    /// Symbols xi1..xid of the partial derivatives in the graded ring.
    Symbol,
    /// The central parameter s.
    Central,
    /// Auxiliary variables (t for Rees constructions, tags for elimination tricks).
    Auxiliary,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Inner {
    names: Vec<String>,
    roles: Vec<Role>,
}

/// Ordered list of named variables with fixed roles.
///
/// Cloning is cheap; two contexts are compatible when their names and roles agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableContext(Arc<Inner>);

impl VariableContext {
    pub fn new<S: AsRef<str>>(vars: &[(S, Role)]) -> Result<Self> {
        let mut names = Vec::with_capacity(vars.len());
        let mut roles = Vec::with_capacity(vars.len());
        for (name, role) in vars {
            let name = name.as_ref().trim().to_string();
            if !is_identifier(&name) {
                return Err(Error::Input(format!("invalid variable name `{name}`")));
            }
            if names.contains(&name) {
                return Err(Error::Input(format!("duplicate variable `{name}`")));
            }
            names.push(name);
            roles.push(*role);
        }
        if names.is_empty() {
            return Err(Error::Input("empty variable list".into()));
        }
        Ok(VariableContext(Arc::new(Inner { names, roles })))
    }

    /// A context made only of base coordinates.
    pub fn base<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let vars: Vec<(&str, Role)> = names.iter().map(|n| (n.as_ref(), Role::Base)).collect();
        Self::new(&vars)
    }

    /// Parses a comma separated list of base coordinate names.
    pub fn parse_base(list: &str) -> Result<Self> {
        let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Self::base(&names)
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn role(&self, i: usize) -> Role {
        self.0.roles[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// Indices of all variables with the given role, in context order.
    pub fn indices_with(&self, role: Role) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0.roles[i] == role).collect()
    }

    /// Number of base coordinates.
    pub fn dimension(&self) -> usize {
        self.indices_with(Role::Base).len()
    }

    /// New context with extra variables appended.
    pub fn extend<S: AsRef<str>>(&self, extra: &[(S, Role)]) -> Result<Self> {
        let mut vars: Vec<(String, Role)> = self
            .0
            .names
            .iter()
            .cloned()
            .zip(self.0.roles.iter().copied())
            .collect();
        vars.extend(extra.iter().map(|(n, r)| (n.as_ref().to_string(), *r)));
        Self::new(&vars)
    }

    /// A fresh name not clashing with existing variables.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        let mut k = 0;
        while self.index_of(&name).is_some() {
            k += 1;
            name = format!("{stem}{k}");
        }
        name
    }

    pub(crate) fn same(&self, other: &VariableContext) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    pub(crate) fn check(&self, other: &VariableContext) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

impl fmt::Debug for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.0.names.iter().zip(self.0.roles.iter()))
            .finish()
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
