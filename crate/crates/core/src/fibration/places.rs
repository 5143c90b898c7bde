//! Closed points of P¹ over a finite field, with a representative in the residue field when
//! that field is small enough to build.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldSpec, FiniteField};
use crate::poly::{factor, BinaryForm, UniPoly, P1};

/// Residue fields F_{q^d} of a base field F_q together with the embeddings, built on demand.
pub struct Tower {
    base: FiniteField,
    levels: Mutex<BTreeMap<u32, (FiniteField, Embedding)>>,
}

impl Tower {
    pub fn new(base: &FiniteField) -> Self {
        Tower {
            base: base.clone(),
            levels: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    /// F_{q^d} and the embedding of the base field into it.
    pub fn level(&self, d: u32) -> Result<(FiniteField, Embedding)> {
        if let Some(l) = self.levels.lock().unwrap().get(&d) {
            return Ok(l.clone());
        }
        let k = self.base.k() * d;
        let q = (self.base.p() as u128).checked_pow(k);
        if q.is_none_or(|q| q >= 1 << 62) {
            return Err(Error::EnlargeField(format!(
                "residue field of degree {d} over {} is too large",
                self.base.spec()
            )));
        }
        let big = if d == 1 {
            self.base.clone()
        } else {
            FiniteField::new(self.base.p(), k)?
        };
        let emb = self.base.embed_into(&big)?;
        self.levels
            .lock()
            .unwrap()
            .insert(d, (big.clone(), emb.clone()));
        Ok((big, emb))
    }
}

/// A closed point of P¹: the point at infinity or the zero set of a monic irreducible in λ.
#[derive(Clone, Debug)]
pub struct Place {
    /// `None` at infinity.
    pub min_poly: Option<UniPoly<FiniteField>>,
    pub degree: u32,
    /// F_{q^d}, whether or not it can be represented.
    pub spec: FieldSpec,
    /// Residue field and a geometric point in it; absent when F_{q^d} is too large for the
    /// element encoding.
    pub residue: Option<Residue>,
}

#[derive(Clone, Debug)]
pub struct Residue {
    pub field: FiniteField,
    /// One geometric point of the place.
    pub rep: P1<u64>,
}

impl Place {
    pub fn infinity(base: &FiniteField) -> Self {
        Place {
            min_poly: None,
            degree: 1,
            spec: base.spec(),
            residue: Some(Residue {
                field: base.clone(),
                rep: P1::Infinity,
            }),
        }
    }

    /// Same closed point.
    pub fn same(&self, o: &Place) -> bool {
        self.min_poly == o.min_poly
    }

    pub fn is_infinity(&self) -> bool {
        self.min_poly.is_none()
    }

    /// The residue field and representative, or an "enlarge field" error.
    pub fn residue(&self) -> Result<&Residue> {
        self.residue.as_ref().ok_or_else(|| {
            Error::EnlargeField(format!("residue field {} of a place is too large", self.spec))
        })
    }

    /// Whether this is the rational place λ = t.
    pub fn is_rational_at(&self, t: &P1<u64>) -> bool {
        self.degree == 1 && self.residue.as_ref().is_some_and(|r| r.rep == *t)
    }

    pub fn record(&self) -> PlaceRecord {
        let t = match &self.residue {
            Some(Residue { rep: P1::Infinity, .. }) => "inf".into(),
            Some(Residue { field, rep: P1::Finite(a) }) => field.fmt_elem(a),
            None => format!(
                "root of {}",
                self.min_poly.as_ref().map_or("?".into(), |m| m.display("t"))
            ),
        };
        PlaceRecord {
            t,
            field: self.spec.to_string(),
            degree: self.degree,
            min_poly: self.min_poly.as_ref().map(|m| m.display("t")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceRecord {
    pub t: String,
    pub field: String,
    /// Size of the Frobenius orbit.
    pub degree: u32,
    pub min_poly: Option<String>,
}

/// Closed points where a nonzero binary form (x = λ-numerator, y = 1 chart) vanishes, with
/// multiplicities, ordered by degree then minimal polynomial, infinity last among degree 1.
pub fn places_of(form: &BinaryForm<FiniteField>, tower: &Tower) -> Result<Vec<(Place, usize)>> {
    if form.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    let u = form.dehomogenize();
    if u.deg().unwrap_or(0) > 0 {
        for (g, m) in factor::factor(&u)? {
            let d = g.deg().unwrap() as u32;
            let residue = match tower.level(d) {
                Ok((big, emb)) => {
                    let roots = big.find_roots(&emb.apply_poly(&g))?;
                    let rep = *roots.iter().min().ok_or_else(|| {
                        Error::Inconsistent("irreducible factor without roots".into())
                    })?;
                    Some(Residue {
                        field: big,
                        rep: P1::Finite(rep),
                    })
                }
                Err(Error::EnlargeField(_)) => None,
                Err(e) => return Err(e),
            };
            let base = tower.base();
            out.push((
                Place {
                    min_poly: Some(g),
                    degree: d,
                    spec: FieldSpec::Finite {
                        p: base.p(),
                        k: base.k() * d,
                    },
                    residue,
                },
                m,
            ));
        }
    }
    let mi = form.mult_at_infinity();
    if mi > 0 {
        let pos = out.iter().position(|(p, _)| p.degree > 1).unwrap_or(out.len());
        out.insert(pos, (Place::infinity(tower.base()), mi));
    }
    Ok(out)
}
