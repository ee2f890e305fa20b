use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::presentation::{pairing_presentation, Presentation};
use crate::scalar::{DSquared, ExactScalar};
use crate::theory::{AbelianTheory, ColorVector, EvalOptions};

use super::{EngineError, ScalarMatrix};

/// A functional on basic cobordisms: given a presentation with one basis
/// index per handlebody (an element of Z(Σ_g) for that handlebody's genus),
/// returns a scalar.
pub trait FunctionalOracle: Send + Sync {
    fn dim(&self, genus: usize) -> usize;
    fn d_squared(&self) -> DSquared;
    fn value(&self, p: &Presentation, basis: &[usize]) -> Result<ExactScalar, EngineError>;
    fn describe(&self) -> String;
}

/// The Gauss-sum oracle of an abelian theory. The basis of Z(Σ_g) is Aᵍ,
/// indexed in mixed radix |A| with handle 1 most significant.
#[derive(Debug, Clone)]
pub struct AbelianOracle {
    theory: Arc<AbelianTheory>,
    options: EvalOptions,
}

impl AbelianOracle {
    pub fn new(theory: Arc<AbelianTheory>, options: EvalOptions) -> Self {
        AbelianOracle { theory, options }
    }

    pub fn theory(&self) -> &AbelianTheory {
        &self.theory
    }

    /// Expands per-handlebody basis indices into one color per longitude.
    pub fn colors(&self, p: &Presentation, basis: &[usize]) -> Result<ColorVector, EngineError> {
        if basis.len() != p.handlebodies().len() {
            return Err(EngineError::Shape(format!(
                "{} basis indices for {} handlebodies",
                basis.len(),
                p.handlebodies().len()
            )));
        }
        let n = self.theory.size();
        let mut colors = Vec::with_capacity(p.total_genus());
        for (h, &b) in p.handlebodies().iter().zip(basis) {
            let g = h.genus();
            if b >= self.dim(g) {
                return Err(EngineError::Shape(format!(
                    "basis index {b} out of range for genus {g}"
                )));
            }
            let mut digits = vec![0; g];
            let mut rest = b;
            for d in digits.iter_mut().rev() {
                *d = rest % n;
                rest /= n;
            }
            colors.extend(digits);
        }
        Ok(ColorVector(colors))
    }
}

impl FunctionalOracle for AbelianOracle {
    fn dim(&self, genus: usize) -> usize {
        self.theory.size().pow(genus as u32)
    }

    fn d_squared(&self) -> DSquared {
        self.theory.d_squared()
    }

    fn value(&self, p: &Presentation, basis: &[usize]) -> Result<ExactScalar, EngineError> {
        let colors = self.colors(p, basis)?;
        self.theory
            .evaluate_with(p, &colors, &self.options)
            .map_err(EngineError::Oracle)
    }

    fn describe(&self) -> String {
        let mut s = self.theory.name().to_string();
        let nb = self.options.normalization;
        if nb != Default::default() {
            s.push_str(&format!(" [normalization {} {}]", nb.constant, nb.per_handlebody));
        }
        if let Some(t) = self.options.twist {
            s.push_str(&format!(
                " [twist {} by {}]",
                self.theory.element_name(t.element),
                t.shift
            ));
        }
        s
    }
}

/// Σⱼ vⱼ ⊗ wⱼ as a coefficient matrix: the inverse of the pairing.
#[derive(Debug, Clone)]
pub struct DualElement {
    pub genus: usize,
    pub coeffs: ScalarMatrix,
}

impl DualElement {
    /// Σⱼ vⱼ⟨wⱼ, x⟩ = x and Σⱼ ⟨x, vⱼ⟩wⱼ = x for every basis vector x.
    pub fn contraction_laws_hold(&self, pairing: &ScalarMatrix) -> bool {
        let id = ScalarMatrix::identity(pairing.rows(), pairing.ctx());
        self.coeffs.mul(pairing).eq_exact(&id) && pairing.mul(&self.coeffs).eq_exact(&id)
    }
}

type PairingEntry = Arc<(ScalarMatrix, Result<DualElement, EngineError>)>;

/// Dimensions, pairings and a functional oracle: the input of the extension.
pub struct MinimalData {
    oracle: Arc<dyn FunctionalOracle>,
    cache: Mutex<HashMap<usize, PairingEntry>>,
}

impl MinimalData {
    pub fn new(oracle: Arc<dyn FunctionalOracle>) -> Self {
        MinimalData {
            oracle,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn oracle(&self) -> &dyn FunctionalOracle {
        self.oracle.as_ref()
    }

    pub fn d_squared(&self) -> DSquared {
        self.oracle.d_squared()
    }

    pub fn dim(&self, genus: usize) -> usize {
        self.oracle.dim(genus)
    }

    pub fn dims(&self, genera: &[usize]) -> Vec<usize> {
        genera.iter().map(|&g| self.dim(g)).collect()
    }

    fn entry(&self, g: usize) -> Result<PairingEntry, EngineError> {
        if let Some(e) = self.cache.lock().unwrap().get(&g) {
            return Ok(e.clone());
        }
        let p = pairing_presentation(g);
        let d = self.dim(g);
        let mut pairing = ScalarMatrix::zeros(d, d, self.d_squared());
        for x in 0..d {
            for y in 0..d {
                pairing.set(x, y, self.functional(&p, &[x, y])?);
            }
        }
        let dual = match pairing.inverse() {
            Some(coeffs) => Ok(DualElement { genus: g, coeffs }),
            None => Err(EngineError::Singular(g)),
        };
        let e = Arc::new((pairing, dual));
        self.cache.lock().unwrap().insert(g, e.clone());
        Ok(e)
    }

    /// ⟨x, y⟩ = Z(pairing presentation)(x ⊗ y).
    pub fn pairing(&self, g: usize) -> Result<ScalarMatrix, EngineError> {
        Ok(self.entry(g)?.0.clone())
    }

    pub fn dual_element(&self, g: usize) -> Result<DualElement, EngineError> {
        self.entry(g)?.1.clone()
    }

    /// The functional of a possibly disconnected presentation: the product
    /// of the oracle over connected components.
    pub fn functional(&self, p: &Presentation, basis: &[usize]) -> Result<ExactScalar, EngineError> {
        if basis.len() != p.handlebodies().len() {
            return Err(EngineError::Shape(format!(
                "{} basis indices for {} handlebodies",
                basis.len(),
                p.handlebodies().len()
            )));
        }
        match p.component_count() {
            0 => return Ok(ExactScalar::one()),
            1 => return self.oracle.value(p, basis),
            _ => {}
        }
        let mut acc = ExactScalar::one();
        for (part, idx) in p.split_components() {
            let b: Vec<usize> = idx.iter().map(|&h| basis[h]).collect();
            acc = acc.mul(&self.oracle.value(&part, &b)?);
        }
        Ok(acc)
    }
}

impl std::fmt::Debug for MinimalData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MinimalData")
            .field("oracle", &self.oracle.describe())
            .finish()
    }
}

/// The minimal data of an abelian theory with the frozen normalization.
pub fn minimal_data(theory: &AbelianTheory) -> MinimalData {
    minimal_data_with(theory, EvalOptions::default())
}

pub fn minimal_data_with(theory: &AbelianTheory, options: EvalOptions) -> MinimalData {
    MinimalData::new(Arc::new(AbelianOracle::new(Arc::new(theory.clone()), options)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::builtin;

    #[test]
    fn dims_and_pairings() {
        let md = minimal_data(&builtin("semion").unwrap());
        assert_eq!(md.dim(1), 2);
        let p = md.pairing(1).unwrap();
        assert!(p.is_symmetric());
        let dual = md.dual_element(1).unwrap();
        assert!(dual.contraction_laws_hold(&p));
        assert_eq!(minimal_data(&builtin("toric-code").unwrap()).dim(2), 16);
    }

    #[test]
    fn functional_multiplies_components() {
        let t = builtin("z3").unwrap();
        let md = minimal_data(&t);
        let mut k = Presentation::empty();
        k.add_surgery("K", 1).unwrap();
        let pair = pairing_presentation(1);
        let u = pair.disjoint_union(&k).disjoint_union(&Presentation::sphere());
        for x in 0..3 {
            for y in 0..3 {
                let lhs = md.functional(&u, &[x, y]).unwrap();
                let rhs = md
                    .functional(&pair, &[x, y])
                    .unwrap()
                    .mul(&md.functional(&k, &[]).unwrap())
                    .mul(&ExactScalar::d_power(-1));
                assert!(lhs.eq_in(&rhs, t.d_squared()));
            }
        }
        assert_eq!(md.functional(&Presentation::empty(), &[]).unwrap(), ExactScalar::one());
    }

    #[test]
    fn basis_decoding() {
        let t = Arc::new(builtin("z3").unwrap());
        let o = AbelianOracle::new(t, EvalOptions::default());
        let mut p = Presentation::empty();
        p.add_handlebody("A", 2).unwrap();
        p.add_handlebody("B", 0).unwrap();
        p.add_handlebody("C", 1).unwrap();
        assert_eq!(o.colors(&p, &[5, 0, 2]).unwrap().0, vec![1, 2, 2]);
        assert!(o.colors(&p, &[9, 0, 0]).is_err());
    }
}
