//! Boolean relations, constraint formulas over them and their Schaefer-style
//! classification.
//!
//! A tuple of arity `a` is stored as a `u32` whose bit `i` is coordinate `i`.
//! In text form coordinate 0 is the leftmost character, so `"01"` is the
//! tuple with `x0 = 0, x1 = 1`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::{EnumError, Result};

pub const MAX_ARITY: usize = 16;
pub const BRUTE_FORCE_MAX_VARS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CspError {
    #[error("arity {0} exceeds the maximum of {MAX_ARITY}")]
    ArityTooLarge(usize),
    #[error("tuple {tuple:#b} does not fit arity {arity}")]
    TupleOutOfRange { tuple: u32, arity: usize },
    #[error("tuple \"{0}\" is not a 0/1 string")]
    BadTuple(String),
    #[error("tuple \"{tuple}\" has width {width}, expected {arity}")]
    TupleWidth {
        tuple: String,
        width: usize,
        arity: usize,
    },
    #[error("relation {0} is defined twice")]
    DuplicateRelation(String),
    #[error("unknown relation {0}")]
    UnknownRelation(String),
    #[error("constraint over {name} has {got} variables, expected {expected}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("variable {var} out of range for {n} variables")]
    VarOutOfRange { var: usize, n: usize },
}

/// A relation `R ⊆ {0,1}^arity` given by its tuples.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanRelation {
    arity: usize,
    tuples: Vec<u32>,
    member: Vec<u64>,
}

impl BooleanRelation {
    pub fn new<I: IntoIterator<Item = u32>>(arity: usize, tuples: I) -> Result<Self, CspError> {
        if arity > MAX_ARITY {
            return Err(CspError::ArityTooLarge(arity));
        }
        let limit = 1u64 << arity;
        let mut set = BTreeSet::new();
        for t in tuples {
            if u64::from(t) >= limit {
                return Err(CspError::TupleOutOfRange { tuple: t, arity });
            }
            set.insert(t);
        }
        Ok(Self::from_sorted(arity, set.into_iter().collect()))
    }

    fn from_sorted(arity: usize, tuples: Vec<u32>) -> Self {
        let mut member = vec![0u64; (1usize << arity).div_ceil(64)];
        for &t in &tuples {
            member[(t / 64) as usize] |= 1 << (t % 64);
        }
        Self {
            arity,
            tuples,
            member,
        }
    }

    /// Parses tuples written as 0/1 strings, coordinate 0 first.
    pub fn from_bitstrings<S: AsRef<str>>(arity: usize, tuples: &[S]) -> Result<Self, CspError> {
        let parsed = tuples
            .iter()
            .map(|s| parse_tuple(s.as_ref(), arity))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(arity, parsed)
    }

    /// `{0,1}^arity`.
    pub fn full(arity: usize) -> Result<Self, CspError> {
        if arity > MAX_ARITY {
            return Err(CspError::ArityTooLarge(arity));
        }
        Ok(Self::from_sorted(arity, (0..(1u32 << arity)).collect()))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Tuples in ascending numeric order.
    pub fn tuples(&self) -> &[u32] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: u32) -> bool {
        u64::from(tuple) < (1u64 << self.arity)
            && self.member[(tuple / 64) as usize] & (1 << (tuple % 64)) != 0
    }

    fn mask(&self) -> u32 {
        ((1u64 << self.arity) - 1) as u32
    }

    /// Bitwise complement of every tuple.
    pub fn complement(&self) -> Self {
        let m = self.mask();
        let mut t: Vec<u32> = self.tuples.iter().map(|x| !x & m).collect();
        t.sort_unstable();
        Self::from_sorted(self.arity, t)
    }

    /// `{ t without coordinate pos : t ∈ R, t[pos] = val }`.
    pub fn condition(&self, pos: usize, val: bool) -> Self {
        assert!(pos < self.arity, "coordinate {pos} out of range");
        let low = (1u32 << pos) - 1;
        let mut out: Vec<u32> = self
            .tuples
            .iter()
            .filter(|&&t| (t >> pos) & 1 == u32::from(val))
            .map(|&t| (t & low) | ((t >> (pos + 1)) << pos))
            .collect();
        out.sort_unstable();
        out.dedup();
        Self::from_sorted(self.arity - 1, out)
    }

    pub fn tuple_string(&self, tuple: u32) -> String {
        (0..self.arity)
            .map(|i| if (tuple >> i) & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for BooleanRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, &t) in self.tuples.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.tuple_string(t))?;
        }
        write!(f, "}}/{}", self.arity)
    }
}

pub fn parse_tuple(s: &str, arity: usize) -> Result<u32, CspError> {
    if s.chars().count() != arity {
        return Err(CspError::TupleWidth {
            tuple: s.to_string(),
            width: s.chars().count(),
            arity,
        });
    }
    s.chars().enumerate().try_fold(0u32, |acc, (i, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | (1 << i)),
        _ => Err(CspError::BadTuple(s.to_string())),
    })
}

/// Conditioning at relation level; see [`BooleanRelation::condition`].
pub fn condition_relation(r: &BooleanRelation, pos: usize, val: bool) -> BooleanRelation {
    r.condition(pos, val)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tristate {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassFlags {
    pub zero_valid: bool,
    pub one_valid: bool,
    pub horn: bool,
    pub dual_horn: bool,
    pub bijunctive: bool,
    pub affine: bool,
    pub complementive: bool,
    pub strongly_bijunctive: Tristate,
}

impl ClassFlags {
    /// Flags of a language: each property must hold for every relation.
    pub fn meet(self, other: ClassFlags) -> ClassFlags {
        use Tristate::*;
        ClassFlags {
            zero_valid: self.zero_valid && other.zero_valid,
            one_valid: self.one_valid && other.one_valid,
            horn: self.horn && other.horn,
            dual_horn: self.dual_horn && other.dual_horn,
            bijunctive: self.bijunctive && other.bijunctive,
            affine: self.affine && other.affine,
            complementive: self.complementive && other.complementive,
            strongly_bijunctive: match (self.strongly_bijunctive, other.strongly_bijunctive) {
                (No, _) | (_, No) => No,
                (Yes, Yes) => Yes,
                _ => Unknown,
            },
        }
    }

    /// Flags of the empty language.
    pub fn top() -> ClassFlags {
        ClassFlags {
            zero_valid: true,
            one_valid: true,
            horn: true,
            dual_horn: true,
            bijunctive: true,
            affine: true,
            complementive: true,
            strongly_bijunctive: Tristate::Yes,
        }
    }
}

fn closed2(r: &BooleanRelation, op: impl Fn(u32, u32) -> u32) -> bool {
    let t = r.tuples();
    t.iter()
        .enumerate()
        .all(|(i, &a)| t[i..].iter().all(|&b| r.contains(op(a, b))))
}

fn closed_majority(r: &BooleanRelation) -> bool {
    let t = r.tuples();
    for i in 0..t.len() {
        for j in i..t.len() {
            for l in j..t.len() {
                let (a, b, c) = (t[i], t[j], t[l]);
                if !r.contains((a & b) | (a & c) | (b & c)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Closure under `x ⊕ y ⊕ z`. Equivalent to `{t ⊕ t0 : t ∈ R}` being closed
/// under `⊕` for one fixed `t0 ∈ R`, which is what is checked.
fn closed_affine(r: &BooleanRelation) -> bool {
    let Some(&t0) = r.tuples().first() else {
        return true;
    };
    closed2(r, |a, b| a ^ b ^ t0)
}

/// Clauses `(u ∨ v)`, `(u ≠ v)`, `(u → v)` over coordinates, as predicates.
fn strongly_bijunctive_clauses(arity: usize) -> Vec<Box<dyn Fn(u32) -> bool>> {
    let mut out: Vec<Box<dyn Fn(u32) -> bool>> = Vec::new();
    for u in 0..arity {
        for v in 0..arity {
            let bit = move |t: u32, i: usize| (t >> i) & 1 == 1;
            out.push(Box::new(move |t| bit(t, u) || bit(t, v)));
            out.push(Box::new(move |t| bit(t, u) != bit(t, v)));
            out.push(Box::new(move |t| !bit(t, u) || bit(t, v)));
        }
    }
    out
}

fn strongly_bijunctive(r: &BooleanRelation, bijunctive: bool) -> Tristate {
    if !bijunctive {
        return Tristate::No;
    }
    let implied: Vec<_> = strongly_bijunctive_clauses(r.arity())
        .into_iter()
        .filter(|c| r.tuples().iter().all(|&t| c(t)))
        .collect();
    let defines = (0..(1u32 << r.arity())).all(|t| implied.iter().all(|c| c(t)) == r.contains(t));
    if defines {
        Tristate::Yes
    } else {
        Tristate::Unknown
    }
}

/// Classifies a relation by its closure properties.
///
/// The empty relation is vacuously closed under everything. Strong
/// bijunctivity is only confirmed when the relation is defined by the
/// `(u ∨ v)`, `(u ≠ v)`, `(u → v)` clauses it satisfies; frozen
/// implementations with auxiliary variables are not searched, so a bijunctive
/// relation failing that test is reported as `Unknown`.
pub fn classify_relation(r: &BooleanRelation) -> ClassFlags {
    let mask = r.mask();
    let bijunctive = closed_majority(r);
    ClassFlags {
        zero_valid: r.contains(0),
        one_valid: r.contains(mask),
        horn: closed2(r, |a, b| a & b),
        dual_horn: closed2(r, |a, b| a | b),
        bijunctive,
        affine: closed_affine(r),
        complementive: r.tuples().iter().all(|&t| r.contains(!t & mask)),
        strongly_bijunctive: strongly_bijunctive(r, bijunctive),
    }
}

/// A finite set of named relations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintLanguage {
    relations: Vec<(String, BooleanRelation)>,
}

impl ConstraintLanguage {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: &str, relation: BooleanRelation) -> Result<usize, CspError> {
        if self.index_of(name).is_some() {
            return Err(CspError::DuplicateRelation(name.to_string()));
        }
        self.relations.push((name.to_string(), relation));
        Ok(self.relations.len() - 1)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|(n, _)| n == name)
    }

    pub fn relation(&self, idx: usize) -> &BooleanRelation {
        &self.relations[idx].1
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.relations[idx].0
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BooleanRelation)> {
        self.relations.iter().map(|(n, r)| (n.as_str(), r))
    }

    pub fn classify(&self) -> ClassFlags {
        self.relations
            .iter()
            .map(|(_, r)| classify_relation(r))
            .fold(ClassFlags::top(), ClassFlags::meet)
    }
}

/// `R(x_1, ..., x_a)`; variables may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    relation: usize,
    vars: Vec<usize>,
}

impl Constraint {
    /// Index of the relation in the formula's language.
    pub fn relation(&self) -> usize {
        self.relation
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }
}

/// A conjunction of constraints over variables `0..var_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaFormula {
    language: ConstraintLanguage,
    constraints: Vec<Constraint>,
    var_count: usize,
    unsatisfiable: bool,
}

impl GammaFormula {
    pub fn new(language: ConstraintLanguage, var_count: usize) -> Self {
        Self {
            language,
            constraints: Vec::new(),
            var_count,
            unsatisfiable: false,
        }
    }

    pub fn add_constraint(&mut self, name: &str, vars: Vec<usize>) -> Result<(), CspError> {
        let idx = self
            .language
            .index_of(name)
            .ok_or_else(|| CspError::UnknownRelation(name.to_string()))?;
        self.add_constraint_by_index(idx, vars)
    }

    pub fn add_constraint_by_index(&mut self, relation: usize, vars: Vec<usize>) -> Result<(), CspError> {
        let r = self.language.relation(relation);
        if vars.len() != r.arity() {
            return Err(CspError::ArityMismatch {
                name: self.language.name(relation).to_string(),
                expected: r.arity(),
                got: vars.len(),
            });
        }
        if let Some(&var) = vars.iter().find(|&&v| v >= self.var_count) {
            return Err(CspError::VarOutOfRange {
                var,
                n: self.var_count,
            });
        }
        self.constraints.push(Constraint { relation, vars });
        Ok(())
    }

    pub fn language(&self) -> &ConstraintLanguage {
        &self.language
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn relation_of(&self, c: &Constraint) -> &BooleanRelation {
        self.language.relation(c.relation)
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    /// Set when a substitution left some constraint with no satisfying tuple.
    pub fn is_unsatisfiable(&self) -> bool {
        self.unsatisfiable
    }

    /// Relations referenced by at least one constraint.
    pub fn used_relations(&self) -> impl Iterator<Item = &BooleanRelation> {
        let used: BTreeSet<usize> = self.constraints.iter().map(|c| c.relation).collect();
        used.into_iter().map(move |i| self.language.relation(i))
    }

    /// Class of the relations actually used by the formula.
    pub fn classify(&self) -> ClassFlags {
        self.used_relations()
            .map(classify_relation)
            .fold(ClassFlags::top(), ClassFlags::meet)
    }

    /// Checks an assignment given as a bit mask (bit `i` = variable `i`).
    pub fn satisfied_by_mask(&self, assignment: u64) -> bool {
        !self.unsatisfiable
            && self.constraints.iter().all(|c| {
                let t = c
                    .vars
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, &v)| acc | ((((assignment >> v) & 1) as u32) << j));
                self.relation_of(c).contains(t)
            })
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        !self.unsatisfiable
            && self.constraints.iter().all(|c| {
                let t = c
                    .vars
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, &v)| acc | (u32::from(assignment[v]) << j));
                self.relation_of(c).contains(t)
            })
    }
}

/// `φ[var = val]`: conditions every constraint on `var`, drops constraints
/// that become trivially true and renumbers variables above `var` down by
/// one. Lower-indexed variables keep their numbers.
pub fn substitute(phi: &GammaFormula, var: usize, val: bool) -> GammaFormula {
    assert!(var < phi.var_count, "variable {var} out of range");
    let mut language = ConstraintLanguage::new();
    let mut interned: HashMap<BooleanRelation, usize> = HashMap::new();
    let mut constraints = Vec::with_capacity(phi.constraints.len());
    let mut unsatisfiable = phi.unsatisfiable;

    for c in &phi.constraints {
        let mut rel = phi.relation_of(c).clone();
        let mut name = phi.language.name(c.relation).to_string();
        let mut vars = c.vars.clone();
        while let Some(pos) = vars.iter().position(|&x| x == var) {
            rel = rel.condition(pos, val);
            vars.remove(pos);
            name = format!("{name}|{pos}={}", u8::from(val));
        }
        if rel.is_empty() {
            unsatisfiable = true;
        }
        if rel.arity() == 0 && !rel.is_empty() {
            continue;
        }
        for v in &mut vars {
            if *v > var {
                *v -= 1;
            }
        }
        let idx = match interned.get(&rel) {
            Some(&i) => i,
            None => {
                let i = language.relations.len();
                language.relations.push((name, rel.clone()));
                interned.insert(rel, i);
                i
            }
        };
        constraints.push(Constraint { relation: idx, vars });
    }
    GammaFormula {
        language,
        constraints,
        var_count: phi.var_count - 1,
        unsatisfiable,
    }
}

/// All models by exhaustive evaluation, as bit masks (bit `i` = variable `i`).
pub fn brute_models(phi: &GammaFormula) -> Result<BTreeSet<u32>> {
    if phi.var_count > BRUTE_FORCE_MAX_VARS {
        return Err(EnumError::GuardExceeded {
            what: "brute-force variable count",
            limit: BRUTE_FORCE_MAX_VARS,
            actual: phi.var_count,
        });
    }
    if phi.unsatisfiable {
        return Ok(BTreeSet::new());
    }
    Ok((0..(1u32 << phi.var_count))
        .filter(|&m| phi.satisfied_by_mask(u64::from(m)))
        .collect())
}
