//! Finite-support nonnegative measures on the half-line.

pub mod io;

use crate::error::{Error, Result};
use crate::scalar::{ModeKind, Scalar};

/// A point mass.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom<S> {
    pub value: S,
    pub mass: S,
}

/// Atoms with distinct ascending values, positive masses and total mass `M > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure<S> {
    atoms: Vec<Atom<S>>,
    /// `tails[i]` is the mass of atoms `i..`, so `tails[0] = M`.
    tails: Vec<S>,
}

impl<S: Scalar> DiscreteMeasure<S> {
    /// Builds a measure from `(value, mass)` pairs. Equal values are merged by
    /// adding their masses; zero or negative masses are rejected.
    pub fn new<I>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
    {
        let mut atoms: Vec<Atom<S>> = atoms
            .into_iter()
            .map(|(value, mass)| Atom { value, mass })
            .collect();
        if atoms.is_empty() {
            return Err(Error::Invalid("a measure needs at least one atom".into()));
        }
        for (i, atom) in atoms.iter().enumerate() {
            check_value(&atom.value).map_err(|e| Error::Invalid(format!("atom {}: {e}", i + 1)))?;
            if !atom.mass.is_finite() || atom.mass.is_negative() || atom.mass.is_zero() {
                return Err(Error::Invalid(format!(
                    "atom {}: mass must be positive and finite, got {}",
                    i + 1,
                    atom.mass
                )));
            }
        }
        atoms.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite values"));
        let mut merged: Vec<Atom<S>> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            match merged.last_mut() {
                Some(last) if last.value == atom.value => last.mass = last.mass.add(&atom.mass),
                _ => merged.push(atom),
            }
        }
        Ok(Self::from_sorted(merged))
    }

    fn from_sorted(atoms: Vec<Atom<S>>) -> Self {
        let mut tails = vec![S::zero(); atoms.len()];
        let mut acc = S::zero();
        for (i, atom) in atoms.iter().enumerate().rev() {
            acc = acc.add(&atom.mass);
            tails[i] = acc.clone();
        }
        DiscreteMeasure { atoms, tails }
    }

    /// Unit mass at `x`.
    pub fn dirac(x: S) -> Result<Self> {
        check_value(&x)?;
        Ok(Self::from_sorted(vec![Atom {
            value: x,
            mass: S::one(),
        }]))
    }

    /// Empirical measure: each distinct sample gets mass `count / len`.
    pub fn from_samples(values: Vec<S>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("no samples given".into()));
        }
        for (i, v) in values.iter().enumerate() {
            check_value(v).map_err(|e| Error::Invalid(format!("sample {}: {e}", i + 1)))?;
        }
        let len = values.len() as u64;
        let mut sorted = values;
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        let mut atoms: Vec<Atom<S>> = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i + 1;
            while j < sorted.len() && sorted[j] == sorted[i] {
                j += 1;
            }
            atoms.push(Atom {
                value: sorted[i].clone(),
                mass: S::from_ratio((j - i) as u64, len),
            });
            i = j;
        }
        Ok(Self::from_sorted(atoms))
    }

    pub fn atoms(&self) -> &[Atom<S>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mode(&self) -> ModeKind {
        S::KIND
    }

    /// `M`, the sum of all masses.
    pub fn total_mass(&self) -> S {
        self.tails[0].clone()
    }

    pub fn max_value(&self) -> &S {
        &self.atoms.last().expect("nonempty measure").value
    }

    /// Whether any mass sits strictly above zero.
    pub fn has_positive_mass_off_zero(&self) -> bool {
        !self.max_value().is_zero()
    }

    /// `sum_i m_i v_i`.
    pub fn expectation(&self) -> S {
        S::sum_all(self.atoms.iter().map(|a| a.mass.mul(&a.value)))
    }

    /// Mass of atoms with value `>= t`.
    pub fn tail(&self, t: &S) -> S {
        let i = self.atoms.partition_point(|a| a.value < *t);
        self.tails.get(i).cloned().unwrap_or_else(S::zero)
    }

    /// `int_0^inf tail(t) dt`, summed over the intervals between consecutive atoms.
    pub fn layer_cake(&self) -> S {
        let mut previous = S::zero();
        let mut pieces = Vec::with_capacity(self.atoms.len());
        for (atom, tail) in self.atoms.iter().zip(&self.tails) {
            pieces.push(tail.mul(&atom.value.sub(&previous)));
            previous = atom.value.clone();
        }
        S::sum_all(pieces)
    }

    /// True iff every atom is a positive integer. No tolerance in either mode.
    pub fn is_integer_supported(&self) -> bool {
        self.atoms
            .iter()
            .all(|a| a.value.is_integer() && !a.value.is_zero())
    }

    /// All masses multiplied by `c > 0`.
    pub fn scaled(&self, c: &S) -> Result<Self> {
        if c.is_negative() || c.is_zero() || !c.is_finite() {
            return Err(Error::Invalid(format!("scale factor must be positive, got {c}")));
        }
        Ok(Self::from_sorted(
            self.atoms
                .iter()
                .map(|a| Atom {
                    value: a.value.clone(),
                    mass: a.mass.mul(c),
                })
                .collect(),
        ))
    }
}

fn check_value<S: Scalar>(v: &S) -> Result<()> {
    if !v.is_finite() || v.is_negative() {
        return Err(Error::Domain(format!("value must be finite and nonnegative, got {v}")));
    }
    Ok(())
}
