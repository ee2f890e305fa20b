use crate::presentation::{pairing_presentation, FusionRule, Presentation};
use crate::scalar::ExactScalar;

use super::{EngineError, MinimalData, ScalarMatrix};

/// A presentation whose handlebodies are split into an ordered source and
/// an ordered target list: a cobordism Σ → Γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cobordism {
    presentation: Presentation,
    source: Vec<usize>,
    target: Vec<usize>,
}

/// Z(m) as a matrix: rows index the codomain basis, columns the domain.
#[derive(Debug, Clone)]
pub struct CobordismMap {
    pub domain: Vec<usize>,
    pub codomain: Vec<usize>,
    pub matrix: ScalarMatrix,
}

/// Mixed-radix digits of `index`, first factor most significant.
pub(crate) fn decode(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

#[cfg(test)]
pub(crate) fn encode(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

impl Cobordism {
    pub fn new(presentation: Presentation, source: Vec<usize>, target: Vec<usize>) -> Result<Self, EngineError> {
        let m = presentation.handlebodies().len();
        let mut seen = vec![false; m];
        for &h in source.iter().chain(&target) {
            if h >= m || std::mem::replace(&mut seen[h], true) {
                return Err(EngineError::Shape(format!(
                    "boundary lists do not partition {m} handlebodies"
                )));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(EngineError::Shape(format!(
                "boundary lists do not partition {m} handlebodies"
            )));
        }
        Ok(Cobordism {
            presentation,
            source,
            target,
        })
    }

    /// A basic cobordism: everything is source.
    pub fn closed_target(presentation: Presentation) -> Self {
        let source = (0..presentation.handlebodies().len()).collect();
        Cobordism {
            presentation,
            source,
            target: Vec::new(),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    fn genera_of(&self, list: &[usize]) -> Vec<usize> {
        list.iter()
            .map(|&h| self.presentation.handlebodies()[h].genus())
            .collect()
    }

    pub fn source_genera(&self) -> Vec<usize> {
        self.genera_of(&self.source)
    }

    pub fn target_genera(&self) -> Vec<usize> {
        self.genera_of(&self.target)
    }

    /// The all-source flattening: handlebody order becomes the reversed
    /// target list followed by the source list.
    pub fn hat(&self) -> Presentation {
        let order: Vec<usize> = self.target.iter().rev().chain(&self.source).copied().collect();
        let mut perm = vec![0; order.len()];
        for (pos, &h) in order.iter().enumerate() {
            perm[h] = pos;
        }
        self.presentation
            .permute(&perm)
            .expect("boundary lists form a permutation")
    }

    /// id_Σ: one pairing presentation per factor, first copy source.
    pub fn identity(genera: &[usize]) -> Self {
        let mut p = Presentation::empty();
        for &g in genera {
            p = p.disjoint_union(&pairing_presentation(g));
        }
        let k = genera.len();
        Cobordism {
            presentation: p,
            source: (0..k).map(|i| 2 * i).collect(),
            target: (0..k).map(|i| 2 * i + 1).collect(),
        }
    }

    /// σ_{Σ,Γ}: Σ ∪ Γ → Γ ∪ Σ.
    pub fn symmetry(sigma: &[usize], gamma: &[usize]) -> Self {
        let all: Vec<usize> = sigma.iter().chain(gamma).copied().collect();
        let id = Self::identity(&all);
        let k = sigma.len();
        let target = id.target[k..].iter().chain(&id.target[..k]).copied().collect();
        Cobordism { target, ..id }
    }

    /// The pairing Σ_g ∪ Σ_g → ∅.
    pub fn cap(g: usize) -> Self {
        Cobordism {
            presentation: pairing_presentation(g),
            source: vec![0, 1],
            target: Vec::new(),
        }
    }

    /// The copairing ∅ → Σ_g ∪ Σ_g.
    pub fn cup(g: usize) -> Self {
        Cobordism {
            presentation: pairing_presentation(g),
            source: Vec::new(),
            target: vec![0, 1],
        }
    }

    /// m ∪ n: sources and targets concatenate.
    pub fn union(&self, other: &Cobordism) -> Cobordism {
        let off = self.presentation.handlebodies().len();
        let presentation = self.presentation.disjoint_union(&other.presentation);
        let source = self
            .source
            .iter()
            .copied()
            .chain(other.source.iter().map(|h| h + off))
            .collect();
        let target = self
            .target
            .iter()
            .copied()
            .chain(other.target.iter().map(|h| h + off))
            .collect();
        Cobordism {
            presentation,
            source,
            target,
        }
    }

    /// `next ∘ self`: glues the i-th target of `self` to the i-th source of
    /// `next` (each gluing is a sewing or a mending).
    pub fn then(&self, next: &Cobordism) -> Result<Cobordism, EngineError> {
        self.then_with(next, &FusionRule::default())
    }

    pub fn then_with(&self, next: &Cobordism, rule: &FusionRule) -> Result<Cobordism, EngineError> {
        if self.target_genera() != next.source_genera() {
            return Err(EngineError::Shape(format!(
                "cannot compose: target genera {:?} vs source genera {:?}",
                self.target_genera(),
                next.source_genera()
            )));
        }
        let off = self.presentation.handlebodies().len();
        let mut p = self.presentation.disjoint_union(&next.presentation);
        let total = p.handlebodies().len();
        let mut pos: Vec<Option<usize>> = (0..total).map(Some).collect();
        for (&a, &b) in self.target.iter().zip(&next.source) {
            let (pa, pb) = (pos[a].unwrap(), pos[off + b].unwrap());
            p = p.glue(pa, pb, rule)?;
            pos[a] = None;
            pos[off + b] = None;
            for slot in pos.iter_mut().flatten() {
                *slot -= (*slot > pa) as usize + (*slot > pb) as usize;
            }
        }
        let source = self.source.iter().map(|&h| pos[h].unwrap()).collect();
        let target = next.target.iter().map(|&h| pos[off + h].unwrap()).collect();
        Ok(Cobordism {
            presentation: p,
            source,
            target,
        })
    }
}

/// Z(m) = (id ⊗ Z(m̂)) ∘ (Z(e_Γ) ⊗ id): contract the reversed-target slots
/// of the flattened functional with the dual elements.
pub fn extend(md: &MinimalData, c: &Cobordism) -> Result<CobordismMap, EngineError> {
    let tg = c.target_genera();
    let sg = c.source_genera();
    let tdims = md.dims(&tg);
    let sdims = md.dims(&sg);
    let rev_dims: Vec<usize> = tdims.iter().rev().copied().collect();
    let dt: usize = tdims.iter().product();
    let ds: usize = sdims.iter().product();
    let ctx = md.d_squared();
    let hat = c.hat();

    let mut f = ScalarMatrix::zeros(dt, ds, ctx);
    for r in 0..dt {
        let mut basis = decode(r, &rev_dims);
        basis.extend(std::iter::repeat_n(0, sg.len()));
        for s in 0..ds {
            let sd = decode(s, &sdims);
            basis[tg.len()..].copy_from_slice(&sd);
            f.set(r, s, md.functional(&hat, &basis)?);
        }
    }
    if tg.is_empty() {
        return Ok(CobordismMap {
            domain: sg,
            codomain: tg,
            matrix: f,
        });
    }

    let duals = tg.iter().map(|&g| md.dual_element(g)).collect::<Result<Vec<_>, _>>()?;
    let k = tg.len();
    let e = ScalarMatrix::from_fn(dt, dt, ctx, |row, col| {
        let gamma = decode(row, &tdims);
        let gamma_rev = decode(col, &rev_dims);
        let mut acc = ExactScalar::one();
        for i in 0..k {
            let v = duals[i].coeffs.get(gamma[i], gamma_rev[k - 1 - i]);
            if v.is_zero() {
                return ExactScalar::zero();
            }
            acc = acc.mul(v);
        }
        acc
    });
    Ok(CobordismMap {
        domain: sg,
        codomain: tg,
        matrix: e.mul(&f),
    })
}

/// The permutation matrix of x ⊗ y ↦ y ⊗ x on Z(Σ) ⊗ Z(Γ).
pub fn swap_matrix(md: &MinimalData, sigma: &[usize], gamma: &[usize]) -> ScalarMatrix {
    let ds: usize = md.dims(sigma).iter().product();
    let dg: usize = md.dims(gamma).iter().product();
    ScalarMatrix::from_fn(dg * ds, ds * dg, md.d_squared(), |r, c| {
        let (y, x) = (r / ds, r % ds);
        if c == x * dg + y {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        }
    })
}
