//! The Varchenko–Gelfand algebra `VG(A) = {f : ch(A) → F}` with pointwise
//! operations, its Heaviside filtration and the graded pieces.
//!
//! Every function is a dense vector indexed by the lexicographic chamber
//! order of [`ChamberSet`].

mod filtration;
mod gheav;
mod presentation;
mod serialize;
mod sqzero;

pub use filtration::{FilChain, GradedClass};
pub use gheav::{GenHeaviside, LocalModel};
pub use presentation::{CircuitCheck, PresentationReport};
pub use serialize::{CHAMBER_ORDER, SCHEMA_VERSION};
pub use sqzero::{format_linear, normalize, SqzeroLine, SCAN_LIMIT};

use std::sync::OnceLock;

use crate::arrangement::{chambers, restriction, Arrangement, ChamberSet, Lattice, Restriction, Sign};
use crate::error::{Error, Result};
use crate::exactla::Field;

/// A chamber function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VgElement<F: Field> {
    pub values: Vec<F::Elem>,
}

/// Side of a hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Arrangement data shared by all VG computations over one field.
#[derive(Debug)]
pub struct VgAlgebra<F: Field> {
    field: F,
    arrangement: Arrangement,
    chambers: ChamberSet,
    restrictions: Vec<Restriction>,
    lattice: Lattice,
    allow_char2: bool,
    fil: OnceLock<FilChain<F>>,
}

impl<F: Field> VgAlgebra<F> {
    /// Characteristic 2 is rejected unless `allow_char2` is set.
    pub fn new(arrangement: &Arrangement, field: F, allow_char2: bool) -> Result<Self> {
        if field.characteristic() == 2 && !allow_char2 {
            return Err(Error::CharacteristicTwo("VG computations"));
        }
        let cs = chambers(arrangement);
        let restrictions = (0..arrangement.n()).map(|i| restriction(arrangement, &cs, i)).collect();
        Ok(VgAlgebra {
            field,
            arrangement: arrangement.clone(),
            lattice: Lattice::new(arrangement),
            chambers: cs,
            restrictions,
            allow_char2,
            fil: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn chambers(&self) -> &ChamberSet {
        &self.chambers
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn restriction(&self, i: usize) -> &Restriction {
        &self.restrictions[i]
    }

    pub fn n(&self) -> usize {
        self.arrangement.n()
    }

    pub fn dim(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_char2(&self) -> bool {
        self.field.characteristic() == 2
    }

    pub fn allows_char2(&self) -> bool {
        self.allow_char2
    }

    /// Fails in characteristic 2: used by the shortcuts that need `2 ≠ 0`.
    pub(crate) fn require_odd_char(&self, what: &'static str) -> Result<()> {
        if self.is_char2() {
            Err(Error::CharacteristicTwo(what))
        } else {
            Ok(())
        }
    }

    pub fn fil(&self) -> &FilChain<F> {
        self.fil.get_or_init(|| FilChain::new(self))
    }

    pub fn element(&self, values: Vec<F::Elem>) -> VgElement<F> {
        assert_eq!(values.len(), self.dim());
        VgElement { values }
    }

    pub fn constant(&self, c: F::Elem) -> VgElement<F> {
        self.element(vec![c; self.dim()])
    }

    pub fn one(&self) -> VgElement<F> {
        self.constant(self.field.one())
    }

    pub fn zero(&self) -> VgElement<F> {
        self.constant(self.field.zero())
    }

    /// Primitive idempotent `1_C`.
    pub fn indicator(&self, c: usize) -> VgElement<F> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[c] = self.field.one();
        self.element(v)
    }

    pub fn from_bools(&self, bits: &[bool]) -> VgElement<F> {
        let f = &self.field;
        self.element(bits.iter().map(|&b| if b { f.one() } else { f.zero() }).collect())
    }

    /// `x_i^±`: 1 on chambers on the given side of `H_i`.
    pub fn heaviside(&self, i: usize, side: Side) -> VgElement<F> {
        let want = match side {
            Side::Plus => Sign::Plus,
            Side::Minus => Sign::Minus,
        };
        let bits: Vec<bool> = self.chambers.signs().iter().map(|s| s.0[i] == want).collect();
        self.from_bools(&bits)
    }

    /// `x_S = Π_{i∈S} x_i^+` for the subset mask `s`.
    pub fn monomial(&self, s: u32) -> VgElement<F> {
        let bits: Vec<bool> = self.chambers.masks().iter().map(|&m| m & s == 0).collect();
        self.from_bools(&bits)
    }

    pub fn add(&self, a: &VgElement<F>, b: &VgElement<F>) -> VgElement<F> {
        let f = &self.field;
        self.element(a.values.iter().zip(&b.values).map(|(x, y)| f.add(x, y)).collect())
    }

    pub fn sub(&self, a: &VgElement<F>, b: &VgElement<F>) -> VgElement<F> {
        let f = &self.field;
        self.element(a.values.iter().zip(&b.values).map(|(x, y)| f.sub(x, y)).collect())
    }

    pub fn mul(&self, a: &VgElement<F>, b: &VgElement<F>) -> VgElement<F> {
        let f = &self.field;
        self.element(a.values.iter().zip(&b.values).map(|(x, y)| f.mul(x, y)).collect())
    }

    pub fn scale(&self, c: &F::Elem, a: &VgElement<F>) -> VgElement<F> {
        let f = &self.field;
        self.element(a.values.iter().map(|x| f.mul(c, x)).collect())
    }

    /// `c_0 + Σ c_i x_i^+`.
    pub fn linear(&self, c0: &F::Elem, c: &[F::Elem]) -> VgElement<F> {
        let f = &self.field;
        let values = self
            .chambers
            .masks()
            .iter()
            .map(|&m| (0..self.n()).filter(|&i| m >> i & 1 == 0).fold(c0.clone(), |acc, i| f.add(&acc, &c[i])))
            .collect();
        self.element(values)
    }

    pub fn is_constant(&self, a: &VgElement<F>) -> bool {
        a.values.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_idempotent(&self, a: &VgElement<F>) -> bool {
        let f = &self.field;
        a.values.iter().all(|x| f.is_zero(x) || f.is_one(x))
    }

    /// `ρ_{H_i}^+ f − ρ_{H_i}^− f` as a function on the chambers of `A^{H_i}`.
    pub fn rho(&self, i: usize, a: &VgElement<F>) -> Vec<F::Elem> {
        let f = &self.field;
        self.restrictions[i].lifts.iter().map(|&(p, m)| f.sub(&a.values[p], &a.values[m])).collect()
    }

    /// `Some(c)` when `ρ_{H_i}(f)` is the constant `c`.
    pub fn rho_constant(&self, i: usize, a: &VgElement<F>) -> Option<F::Elem> {
        let r = self.rho(i, a);
        let first = r.first()?.clone();
        r.iter().all(|x| *x == first).then_some(first)
    }

    /// Membership in `Fil^1` by the criterion that every `ρ_H(f)` is constant.
    pub fn in_fil1_by_rho(&self, a: &VgElement<F>) -> bool {
        (0..self.n()).all(|i| self.rho_constant(i, a).is_some())
    }

    /// `Supp(f) = {H : ρ_H(f) ≠ 0}` for `f ∈ Fil^1`.
    pub fn support(&self, a: &VgElement<F>) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            let c = self.rho_constant(i, a).ok_or(Error::NotInFil(1))?;
            if !self.field.is_zero(&c) {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// The chamber indicator functions `1_C`, recovered as the idempotents
    /// with a single nonzero value.
    pub fn primitive_idempotents(&self) -> Vec<VgElement<F>> {
        (0..self.dim()).map(|c| self.indicator(c)).collect()
    }
}
