//! The tripled quiver, its cubic potential, cuts and cyclic derivatives.
//!
//! Paths are written in composition order: `a·b` is `b` followed by `a`, so it
//! is composable when `s(a) = t(b)`. Non-composable products vanish.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Arrow, Quiver, QuiverError};
use crate::dimension::DimensionVector;

/// Suffix naming the reverse `a~` of an arrow `a`.
pub const REVERSE_SUFFIX: &str = "~";
/// Prefix naming the vertex loop `w@i`.
pub const LOOP_PREFIX: &str = "w@";

fn reverse_id(id: &str) -> String {
    format!("{id}{REVERSE_SUFFIX}")
}

fn loop_id(vertex: usize) -> String {
    format!("{LOOP_PREFIX}{vertex}")
}

fn is_vertex_loop(id: &str) -> bool {
    id.starts_with(LOOP_PREFIX)
}

fn render_word(word: &[String]) -> String {
    word.join("·")
}

/// An integer linear combination of paths, in first-occurrence order.
#[derive(Clone, Debug, Default)]
pub struct PathCombination {
    terms: Vec<(i64, Vec<String>)>,
}

impl PathCombination {
    pub fn add_term(&mut self, coeff: i64, path: Vec<String>) {
        if let Some(slot) = self.terms.iter_mut().find(|(_, p)| *p == path) {
            slot.0 += coeff;
        } else {
            self.terms.push((coeff, path));
        }
        self.terms.retain(|(c, _)| *c != 0);
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Vec<String>)>>(terms: I) -> Self {
        let mut out = Self::default();
        for (c, p) in terms {
            out.add_term(c, p);
        }
        out
    }

    pub fn terms(&self) -> &[(i64, Vec<String>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn as_map(&self) -> BTreeMap<&[String], i64> {
        self.terms.iter().map(|(c, p)| (p.as_slice(), *c)).collect()
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(c, p)| (c * k, p.clone())))
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }
}

impl PartialEq for PathCombination {
    fn eq(&self, other: &Self) -> bool {
        self.as_map() == other.as_map()
    }
}

impl Eq for PathCombination {}

fn write_signed_terms(f: &mut fmt::Formatter<'_>, terms: &[(i64, String)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (c, body)) in terms.iter().enumerate() {
        let sep = match (i, *c < 0) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        f.write_str(sep)?;
        if c.abs() != 1 {
            write!(f, "{}*", c.abs())?;
        }
        f.write_str(body)?;
    }
    Ok(())
}

impl fmt::Display for PathCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, String)> = self.terms.iter().map(|(c, p)| (*c, render_word(p))).collect();
        write_signed_terms(f, &terms)
    }
}

/// A finite linear combination of cyclic words, each stored in its
/// lexicographically minimal rotation, sorted, without repeats or zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Potential {
    terms: Vec<(i64, Vec<String>)>,
}

fn min_rotation(word: &[String]) -> Vec<String> {
    (0..word.len())
        .map(|k| word[k..].iter().chain(&word[..k]).cloned().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

impl Potential {
    /// Validates that every word is a cycle in `quiver` and canonicalizes.
    pub fn new(quiver: &Quiver, terms: Vec<(i64, Vec<String>)>) -> Result<Self, QuiverError> {
        let mut combined: BTreeMap<Vec<String>, i64> = BTreeMap::new();
        for (c, word) in terms {
            let arrows = word
                .iter()
                .map(|id| quiver.arrow(id).ok_or_else(|| QuiverError::UnknownArrow(id.clone())))
                .collect::<Result<Vec<&Arrow>, _>>()?;
            let cyclic = !arrows.is_empty()
                && (0..arrows.len()).all(|k| arrows[k].source == arrows[(k + 1) % arrows.len()].target);
            if !cyclic {
                return Err(QuiverError::NotComposable(render_word(&word)));
            }
            *combined.entry(min_rotation(&word)).or_insert(0) += c;
        }
        Ok(Self {
            terms: combined.into_iter().filter(|(_, c)| *c != 0).map(|(w, c)| (c, w)).collect(),
        })
    }

    pub fn terms(&self) -> &[(i64, Vec<String>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, String)> = self.terms.iter().map(|(c, w)| (*c, render_word(w))).collect();
        write_signed_terms(f, &terms)
    }
}

/// `∂W/∂a`: each occurrence of `a` is rotated to the front of its word and
/// deleted. The result is a combination of paths from `t(a)` to `s(a)`;
/// for the tripled potential `∂W/∂a~ = w_{t(a)}·a - a·w_{s(a)}`.
pub fn cyclic_derivative(potential: &Potential, arrow: &str) -> PathCombination {
    let mut out = PathCombination::default();
    for (c, word) in &potential.terms {
        for (k, letter) in word.iter().enumerate() {
            if letter == arrow {
                let rest: Vec<String> = word[k + 1..].iter().chain(&word[..k]).cloned().collect();
                out.add_term(*c, rest);
            }
        }
    }
    out
}

/// The tripled quiver `Q~` and its potential `W = (Σ_i w_i)(Σ_a [a, a~])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tripled {
    pub quiver: Quiver,
    pub potential: Potential,
}

/// Adds a reverse arrow `a~` for every arrow and a loop `w@i` at every vertex.
/// Arrow ids of `q` must not use the reserved `~` suffix or `w@` prefix.
pub fn triple(q: &Quiver) -> Result<Tripled, QuiverError> {
    if let Some(a) = q
        .arrows()
        .iter()
        .find(|a| is_vertex_loop(&a.id) || a.id.ends_with(REVERSE_SUFFIX))
    {
        return Err(QuiverError::InvalidArrowId(a.id.clone()));
    }
    let mut arrows: Vec<Arrow> = q.arrows().to_vec();
    arrows.extend(q.arrows().iter().map(|a| Arrow::new(reverse_id(&a.id), a.target, a.source)));
    arrows.extend((0..q.vertex_count()).map(|i| Arrow::new(loop_id(i), i, i)));
    let quiver = Quiver::new(q.vertex_count(), arrows).expect("tripled arrow ids are unique");

    // Expanding the product: w_i·a·a~ survives only for i = t(a), w_i·a~·a only for i = s(a).
    let mut terms = Vec::new();
    for a in q.arrows() {
        let rev = reverse_id(&a.id);
        terms.push((1, vec![loop_id(a.target), a.id.clone(), rev.clone()]));
        terms.push((-1, vec![loop_id(a.source), rev, a.id.clone()]));
    }
    let potential = Potential::new(&quiver, terms).expect("tripled potential terms are cycles");
    Ok(Tripled { quiver, potential })
}

/// A set of arrows of the tripled quiver.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cut(BTreeSet<String>);

impl Cut {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(ids: I) -> Self {
        Self(ids.into_iter().map(Into::into).collect())
    }

    pub fn arrows(&self) -> &BTreeSet<String> {
        &self.0
    }

    pub fn contains(&self, id: &str) -> bool {
        self.0.contains(id)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<&str> = self.0.iter().map(String::as_str).collect();
        write!(f, "{{{}}}", ids.join(", "))
    }
}

/// Splits the arrows of a tripled quiver into `(base, reverses, loops)`,
/// checking the naming discipline.
fn tripled_parts(tripled: &Quiver) -> Result<Vec<Arrow>, QuiverError> {
    let not = |m: String| QuiverError::NotATripledQuiver(m);
    let base: Vec<Arrow> = tripled
        .arrows()
        .iter()
        .filter(|a| !is_vertex_loop(&a.id) && !a.id.ends_with(REVERSE_SUFFIX))
        .cloned()
        .collect();
    for a in &base {
        let rev = tripled
            .arrow(&reverse_id(&a.id))
            .ok_or_else(|| not(format!("arrow `{}` has no reverse", a.id)))?;
        if rev.source != a.target || rev.target != a.source {
            return Err(not(format!("`{}` is not the reverse of `{}`", rev.id, a.id)));
        }
    }
    for i in 0..tripled.vertex_count() {
        let w = tripled
            .arrow(&loop_id(i))
            .ok_or_else(|| not(format!("vertex {i} has no loop `{}`", loop_id(i))))?;
        if w.source != i || w.target != i {
            return Err(not(format!("`{}` is not a loop at vertex {i}", w.id)));
        }
    }
    if tripled.arrows().len() != 2 * base.len() + tripled.vertex_count() {
        return Err(not("unexpected extra arrows".into()));
    }
    Ok(base)
}

/// The cut `S = {a~ : a ∈ Q_1}`.
pub fn canonical_cut(tripled: &Quiver) -> Result<Cut, QuiverError> {
    Ok(Cut::new(tripled_parts(tripled)?.iter().map(|a| reverse_id(&a.id))))
}

/// Recovers `Q` from `Q~` by deleting the reverse arrows and the vertex loops.
pub fn forget_tripling(tripled: &Quiver) -> Result<Quiver, QuiverError> {
    Quiver::new(tripled.vertex_count(), tripled_parts(tripled)?)
}

/// True iff every term of `W` contains exactly one arrow of `S`. A cut may
/// not contain a vertex loop.
pub fn validate_cut(potential: &Potential, cut: &Cut) -> Result<bool, QuiverError> {
    if let Some(w) = cut.arrows().iter().find(|id| is_vertex_loop(id)) {
        return Err(QuiverError::ContainsLoopArrow(w.clone()));
    }
    Ok(potential
        .terms()
        .iter()
        .all(|(_, word)| word.iter().filter(|l| cut.contains(l)).count() == 1))
}

/// The generators `∂W/∂a, a ∈ S` of the ideal `I_S`.
pub fn jacobi_relations(potential: &Potential, cut: &Cut) -> Result<Vec<(String, PathCombination)>, QuiverError> {
    if !validate_cut(potential, cut)? {
        return Err(QuiverError::InvalidCut);
    }
    Ok(cut
        .arrows()
        .iter()
        .map(|a| (a.clone(), cyclic_derivative(potential, a)))
        .collect())
}

/// `(l, l')` with `l = χ~(γ, γ)` and `l' = l + 2 Σ_{a ∈ S} γ(s(a))γ(t(a))` for
/// the canonical cut. `l' = 0` always; anything else is reported as an error.
pub fn shift_constants(q: &Quiver, gamma: &DimensionVector) -> Result<(i64, i64), QuiverError> {
    q.check_dimension(gamma)?;
    let tripled = triple(q)?;
    let l = tripled.quiver.ringel_form(gamma, gamma)?;
    let cut = canonical_cut(&tripled.quiver)?;
    let cut_sum: i64 = cut
        .arrows()
        .iter()
        .map(|id| {
            let a = tripled.quiver.arrow(id).unwrap();
            gamma[a.source] as i64 * gamma[a.target] as i64
        })
        .sum();
    let l_prime = l + 2 * cut_sum;
    if l_prime != 0 {
        return Err(QuiverError::IdentityViolated { l, l_prime });
    }
    Ok((l, l_prime))
}
