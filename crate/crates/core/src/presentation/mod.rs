//! Surgery presentations of basic 2-framed cobordisms at the level of
//! linking data: a framed link in S³ plus embedded handlebodies, each
//! handle carrying a framed longitude.
//!
//! Circles are kept in a canonical order: the longitudes of every
//! handlebody (boundary order, then handle order) come first, followed by
//! the surgery circles. Every operation returns a new canonical value.

mod format;
mod invariants;
mod moves;

use std::collections::HashSet;

use thiserror::Error;

pub use format::{parse, parse_script, render, render_script, FormatError};
pub use invariants::{first_homology, signature};
pub use moves::{pairing_presentation, FusionRule, MendCircle, Move, MoveScript};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("no circle named `{0}`")]
    UnknownCircle(String),
    #[error("circle index {0} out of range")]
    CircleOutOfRange(usize),
    #[error("handlebody index {0} out of range")]
    HandlebodyOutOfRange(usize),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("not a permutation of {0} handlebodies")]
    NotAPermutation(usize),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("component index {0} out of range")]
    ComponentOutOfRange(usize),
    #[error("linking number overflow")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CircleKind {
    Surgery,
    /// Longitude of handle `handle` (1-based) of handlebody `handlebody`.
    Longitude {
        handlebody: usize,
        handle: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circle {
    name: String,
    kind: CircleKind,
    component: usize,
}

impl Circle {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> CircleKind {
        self.kind
    }

    pub fn is_surgery(&self) -> bool {
        self.kind == CircleKind::Surgery
    }

    pub fn component(&self) -> usize {
        self.component
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Handlebody {
    name: String,
    genus: usize,
    component: usize,
}

impl Handlebody {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn component(&self) -> usize {
        self.component
    }
}

/// A framed link with embedded handlebodies, recorded by its symmetric
/// linking matrix (framings on the diagonal).
///
/// A presentation may describe a disjoint union of connected cobordisms;
/// every circle and handlebody is labelled with the connected component
/// of the underlying four-manifold it belongs to. Components may be empty
/// (a closed S³ piece).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    circles: Vec<Circle>,
    handlebodies: Vec<Handlebody>,
    lk: Vec<Vec<i64>>,
    components: usize,
}

impl Default for Presentation {
    fn default() -> Self {
        Self::empty()
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '\'')
}

impl Presentation {
    /// The empty cobordism ∅ → ∅ (no components).
    pub fn empty() -> Self {
        Presentation {
            circles: Vec::new(),
            handlebodies: Vec::new(),
            lk: Vec::new(),
            components: 0,
        }
    }

    /// A single empty component: S³ with nothing in it.
    pub fn sphere() -> Self {
        Presentation {
            components: 1,
            ..Self::empty()
        }
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn handlebodies(&self) -> &[Handlebody] {
        &self.handlebodies
    }

    pub fn linking_matrix(&self) -> &[Vec<i64>] {
        &self.lk
    }

    pub fn linking(&self, i: usize, j: usize) -> i64 {
        self.lk[i][j]
    }

    pub fn framing(&self, i: usize) -> i64 {
        self.lk[i][i]
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn genera(&self) -> Vec<usize> {
        self.handlebodies.iter().map(|h| h.genus).collect()
    }

    pub fn total_genus(&self) -> usize {
        self.handlebodies.iter().map(|h| h.genus).sum()
    }

    /// Longitudes occupy the first `total_genus()` circle slots.
    pub fn longitude_count(&self) -> usize {
        self.total_genus()
    }

    pub fn surgery_count(&self) -> usize {
        self.circles.len() - self.longitude_count()
    }

    pub fn surgery_indices(&self) -> std::ops::Range<usize> {
        self.longitude_count()..self.circles.len()
    }

    pub fn circle_index(&self, name: &str) -> Option<usize> {
        self.circles.iter().position(|c| c.name == name)
    }

    /// Index of the longitude of handle `handle` (1-based) of handlebody `h`.
    pub fn longitude_index(&self, h: usize, handle: usize) -> usize {
        let before: usize = self.handlebodies[..h].iter().map(|hb| hb.genus).sum();
        before + handle - 1
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty() && self.handlebodies.is_empty()
    }

    /// The surgery part of the linking matrix.
    pub fn surgery_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.surgery_indices();
        self.lk[r.clone()].iter().map(|row| row[r.clone()].to_vec()).collect()
    }

    pub(crate) fn name_taken(&self, name: &str) -> bool {
        self.circles.iter().any(|c| c.name == name) || self.handlebodies.iter().any(|h| h.name == name)
    }

    pub(crate) fn fresh_name(&self, base: &str) -> String {
        if !self.name_taken(base) {
            return base.to_string();
        }
        (2..)
            .map(|k| format!("{base}_{k}"))
            .find(|n| !self.name_taken(n))
            .unwrap()
    }

    fn ensure_component(&mut self, component: usize) {
        if component >= self.components {
            self.components = component + 1;
        }
    }

    fn insert_circle(&mut self, pos: usize, circle: Circle) {
        for row in &mut self.lk {
            row.insert(pos, 0);
        }
        self.lk.insert(pos, vec![0; self.circles.len() + 1]);
        self.circles.insert(pos, circle);
    }

    /// Appends a surgery circle in component 0.
    pub fn add_surgery(&mut self, name: &str, framing: i64) -> Result<usize, PresentationError> {
        self.add_surgery_in(name, framing, 0)
    }

    pub fn add_surgery_in(&mut self, name: &str, framing: i64, component: usize) -> Result<usize, PresentationError> {
        if !valid_name(name) {
            return Err(PresentationError::InvalidName(name.to_string()));
        }
        if self.name_taken(name) {
            return Err(PresentationError::DuplicateId(name.to_string()));
        }
        self.ensure_component(component);
        let pos = self.circles.len();
        self.insert_circle(
            pos,
            Circle {
                name: name.to_string(),
                kind: CircleKind::Surgery,
                component,
            },
        );
        self.lk[pos][pos] = framing;
        Ok(pos)
    }

    /// Appends a handlebody (end of the boundary order) with 0-framed,
    /// unlinked longitudes named `<name>.1 .. <name>.g`.
    pub fn add_handlebody(&mut self, name: &str, genus: usize) -> Result<usize, PresentationError> {
        self.add_handlebody_in(name, genus, 0)
    }

    pub fn add_handlebody_in(
        &mut self,
        name: &str,
        genus: usize,
        component: usize,
    ) -> Result<usize, PresentationError> {
        if !valid_name(name) {
            return Err(PresentationError::InvalidName(name.to_string()));
        }
        if self.name_taken(name) {
            return Err(PresentationError::DuplicateId(name.to_string()));
        }
        self.ensure_component(component);
        let h = self.handlebodies.len();
        let start = self.longitude_count();
        self.handlebodies.push(Handlebody {
            name: name.to_string(),
            genus,
            component,
        });
        for i in 1..=genus {
            let circle = Circle {
                name: format!("{name}.{i}"),
                kind: CircleKind::Longitude {
                    handlebody: h,
                    handle: i,
                },
                component,
            };
            self.insert_circle(start + i - 1, circle);
        }
        Ok(h)
    }

    /// Sets lk(i, j) = lk(j, i) = value (the framing when i == j).
    pub fn set_linking(&mut self, i: usize, j: usize, value: i64) -> Result<(), PresentationError> {
        let n = self.circles.len();
        if i >= n {
            return Err(PresentationError::CircleOutOfRange(i));
        }
        if j >= n {
            return Err(PresentationError::CircleOutOfRange(j));
        }
        if i != j && value != 0 && self.circles[i].component != self.circles[j].component {
            return Err(PresentationError::InvalidMove(format!(
                "`{}` and `{}` lie in different components",
                self.circles[i].name, self.circles[j].name
            )));
        }
        self.lk[i][j] = value;
        self.lk[j][i] = value;
        Ok(())
    }

    pub fn set_framing(&mut self, i: usize, value: i64) -> Result<(), PresentationError> {
        self.set_linking(i, i, value)
    }

    /// Declares the number of components (must cover all labels in use).
    pub fn set_component_count(&mut self, k: usize) -> Result<(), PresentationError> {
        let used = self
            .circles
            .iter()
            .map(|c| c.component + 1)
            .chain(self.handlebodies.iter().map(|h| h.component + 1))
            .max()
            .unwrap_or(0);
        if k < used {
            return Err(PresentationError::ComponentOutOfRange(used - 1));
        }
        self.components = k;
        Ok(())
    }

    /// Restores canonical circle order and component numbering.
    pub(crate) fn canonicalize(&mut self) {
        let mut order: Vec<usize> = Vec::with_capacity(self.circles.len());
        for h in 0..self.handlebodies.len() {
            let mut lons: Vec<(usize, usize)> = self
                .circles
                .iter()
                .enumerate()
                .filter_map(|(idx, c)| match c.kind {
                    CircleKind::Longitude { handlebody, handle } if handlebody == h => Some((handle, idx)),
                    _ => None,
                })
                .collect();
            lons.sort();
            order.extend(lons.into_iter().map(|(_, idx)| idx));
        }
        order.extend(
            self.circles
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_surgery())
                .map(|(idx, _)| idx),
        );
        debug_assert_eq!(order.len(), self.circles.len());
        if order.iter().enumerate().any(|(a, &b)| a != b) {
            self.circles = order.iter().map(|&i| self.circles[i].clone()).collect();
            self.lk = order
                .iter()
                .map(|&i| order.iter().map(|&j| self.lk[i][j]).collect())
                .collect();
        }

        // components numbered by first appearance; empty ones go last
        let mut relabel: Vec<Option<usize>> = vec![None; self.components];
        let mut next = 0;
        let seen = self
            .handlebodies
            .iter()
            .map(|h| h.component)
            .chain(self.circles.iter().filter(|c| c.is_surgery()).map(|c| c.component));
        for c in seen {
            if relabel[c].is_none() {
                relabel[c] = Some(next);
                next += 1;
            }
        }
        for slot in relabel.iter_mut() {
            if slot.is_none() {
                *slot = Some(next);
                next += 1;
            }
        }
        for h in &mut self.handlebodies {
            h.component = relabel[h.component].unwrap();
        }
        for c in &mut self.circles {
            c.component = match c.kind {
                CircleKind::Longitude { handlebody, .. } => self.handlebodies[handlebody].component,
                CircleKind::Surgery => relabel[c.component].unwrap(),
            };
        }
    }

    /// Splits into one single-component presentation per component. Each
    /// entry also lists the original indices of its handlebodies, in order.
    pub fn split_components(&self) -> Vec<(Presentation, Vec<usize>)> {
        (0..self.components)
            .map(|comp| {
                let circle_idx: Vec<usize> = (0..self.circles.len())
                    .filter(|&i| self.circles[i].component == comp)
                    .collect();
                let hb_idx: Vec<usize> = (0..self.handlebodies.len())
                    .filter(|&h| self.handlebodies[h].component == comp)
                    .collect();
                let handlebodies = hb_idx
                    .iter()
                    .map(|&h| Handlebody {
                        component: 0,
                        ..self.handlebodies[h].clone()
                    })
                    .collect();
                let circles = circle_idx
                    .iter()
                    .map(|&i| {
                        let c = &self.circles[i];
                        let kind = match c.kind {
                            CircleKind::Longitude { handlebody, handle } => CircleKind::Longitude {
                                handlebody: hb_idx.iter().position(|&h| h == handlebody).unwrap(),
                                handle,
                            },
                            CircleKind::Surgery => CircleKind::Surgery,
                        };
                        Circle {
                            name: c.name.clone(),
                            kind,
                            component: 0,
                        }
                    })
                    .collect();
                let lk = circle_idx
                    .iter()
                    .map(|&i| circle_idx.iter().map(|&j| self.lk[i][j]).collect())
                    .collect();
                (
                    Presentation {
                        circles,
                        handlebodies,
                        lk,
                        components: 1,
                    },
                    hb_idx,
                )
            })
            .collect()
    }

    /// Checks the structural invariants; used by tests and after parsing.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.circles.len();
        if self.lk.len() != n || self.lk.iter().any(|r| r.len() != n) {
            return Err("linking matrix has the wrong shape".into());
        }
        for i in 0..n {
            for j in 0..n {
                if self.lk[i][j] != self.lk[j][i] {
                    return Err(format!("lk not symmetric at ({i}, {j})"));
                }
                if i != j && self.lk[i][j] != 0 && self.circles[i].component != self.circles[j].component {
                    return Err(format!("lk links components at ({i}, {j})"));
                }
            }
        }
        let mut names = HashSet::new();
        for name in self
            .circles
            .iter()
            .map(|c| &c.name)
            .chain(self.handlebodies.iter().map(|h| &h.name))
        {
            if !names.insert(name) {
                return Err(format!("duplicate id {name}"));
            }
        }
        let mut pos = 0;
        for (h, hb) in self.handlebodies.iter().enumerate() {
            if hb.component >= self.components {
                return Err(format!("handlebody {h} has component out of range"));
            }
            for i in 1..=hb.genus {
                let c = &self.circles[pos];
                if c.kind
                    != (CircleKind::Longitude {
                        handlebody: h,
                        handle: i,
                    })
                    || c.component != hb.component
                {
                    return Err(format!("circle {pos} should be longitude {i} of handlebody {h}"));
                }
                pos += 1;
            }
        }
        for c in &self.circles[pos..] {
            if !c.is_surgery() || c.component >= self.components {
                return Err(format!("unexpected circle {}", c.name));
            }
        }
        Ok(())
    }
}
