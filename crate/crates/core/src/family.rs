//! Generators of test surfaces: random quartics, members of the family 𝒵 containing the line
//! ℓ₀ = {x3 = x4 = 0}, and quartics with a prescribed three-line fibre.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, FiniteField};
use crate::poly::{BinaryForm, Monomial, MultiPoly, P1};
use crate::surface::{LineFrame, ProjLine, QuarticSurface};

/// ℓ₀ = {x3 = x4 = 0}.
pub fn base_line(f: &FiniteField) -> ProjLine<u64> {
    ProjLine::from_equations(f, &[0, 0, 1, 0], &[0, 0, 0, 1]).expect("independent forms")
}

/// Binary form in (x3, x4); entry i multiplies x3^(d−i) x4^i.
pub fn binary_x3x4(f: &FiniteField, c: &[u64]) -> MultiPoly<FiniteField> {
    let d = c.len() as u32 - 1;
    let terms = c
        .iter()
        .enumerate()
        .map(|(i, v)| (Monomial::from_exps(&[0, 0, d - i as u32, i as u32]), *v))
        .collect();
    MultiPoly::from_terms(f, 4, terms)
}

/// x3·x1³ + x4·x2³ + x1·x2·q(x3, x4) + g(x3, x4).
pub fn z_quartic(q: &MultiPoly<FiniteField>, g: &MultiPoly<FiniteField>) -> MultiPoly<FiniteField> {
    let f = q.field();
    let x = |i| MultiPoly::var(f, 4, i);
    x(2).mul(&x(0).pow(3))
        .add(&x(3).mul(&x(1).pow(3)))
        .add(&x(0).mul(&x(1)).mul(q))
        .add(g)
}

/// Degenerations of a 𝒵-member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZShape {
    /// q³ + 27·x3·x4·g and g squarefree and coprime, nonzero at 0 and ∞.
    Generic,
    /// x4 | g.
    X4DividesG,
    /// x3·x4 | g.
    X3X4DividesG,
    /// x3 | q.
    X3DividesQ,
}

#[derive(Clone, Debug)]
pub struct ZMember {
    pub q: MultiPoly<FiniteField>,
    pub g: MultiPoly<FiniteField>,
    pub surface: QuarticSurface<FiniteField>,
}

impl ZMember {
    /// q³ + 27·x3·x4·g, whose zeros carry the I3 fibres.
    pub fn i3_form(&self) -> MultiPoly<FiniteField> {
        let f = self.q.field();
        let x3x4 = MultiPoly::var(f, 4, 2).mul(&MultiPoly::var(f, 4, 3));
        self.q.pow(3).add(&x3x4.mul(&self.g).scale(&f.from_i64(27)))
    }

    /// x3·x4·g, whose zeros carry the I1 fibres.
    pub fn i1_form(&self) -> MultiPoly<FiniteField> {
        let f = self.q.field();
        MultiPoly::var(f, 4, 2)
            .mul(&MultiPoly::var(f, 4, 3))
            .mul(&self.g)
    }
}

fn random_vec(rng: &mut ChaCha8Rng, q: u64, n: usize) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(0..q)).collect()
}

/// A smooth random 𝒵-member of the requested shape (smoothness checked over the base field).
pub fn random_z_member(f: &FiniteField, rng: &mut ChaCha8Rng, shape: ZShape) -> ZMember {
    let q_size = f.q();
    loop {
        let mut qc = random_vec(rng, q_size, 3);
        let mut gc = random_vec(rng, q_size, 5);
        match shape {
            ZShape::Generic => {}
            ZShape::X4DividesG => gc[0] = 0,
            ZShape::X3X4DividesG => {
                gc[0] = 0;
                gc[4] = 0;
            }
            ZShape::X3DividesQ => qc[2] = 0,
        }
        // q(1, 0) = 0 forces a triple line at λ = 0, and q(0, 1) = 0 one at λ = ∞ unless x3 | q
        // is the intended degeneration
        if qc[0] == 0 || (qc[2] == 0 && shape != ZShape::X3DividesQ) || (shape == ZShape::X3DividesQ && gc[4] == 0) {
            continue;
        }
        let q = binary_x3x4(f, &qc);
        let g = binary_x3x4(f, &gc);
        let Ok(surface) = QuarticSurface::new(z_quartic(&q, &g)) else {
            continue;
        };
        let mut m = ZMember { q, g, surface };
        if shape == ZShape::Generic {
            let i3 = m.i3_form();
            let Ok(form) = BinaryForm::from_multi(&i3.mul(&m.g), 3, 2, 10) else {
                continue;
            };
            let z = f.zero();
            let o = f.one();
            if !form.is_squarefree()
                || f.is_zero(&i3.eval(&[z, z, o, z]))
                || f.is_zero(&i3.eval(&[z, z, z, o]))
            {
                continue;
            }
        }
        let Ok(sm) = m.surface.smoothness_check(1) else {
            continue;
        };
        if !sm.is_smooth() {
            continue;
        }
        m.surface.set_smoothness(sm);
        return m;
    }
}

/// A random quartic; each monomial is present with probability `density`.
pub fn random_quartic(f: &FiniteField, rng: &mut ChaCha8Rng, density: f64) -> QuarticSurface<FiniteField> {
    loop {
        let mut terms = Vec::new();
        for a in 0..=4u32 {
            for b in 0..=4 - a {
                for c in 0..=4 - a - b {
                    if rng.gen_bool(density) {
                        let e = [a, b, c, 4 - a - b - c];
                        terms.push((Monomial::from_exps(&e), rng.gen_range(0..f.q())));
                    }
                }
            }
        }
        if let Ok(s) = QuarticSurface::new(MultiPoly::from_terms(f, 4, terms)) {
            return s;
        }
    }
}

/// x3·L1·L2·L3 + x4·C with random linear forms L_i in x1, x2, x3 and a random cubic C: the plane
/// x4 = 0 (λ = 0) cuts ℓ₀ and three further lines. With `star` the L_i are concurrent.
/// Returns a smooth surface on which ℓ₀ is of the first kind and the fibre at λ = 0 has the
/// requested type.
pub fn three_line_fibre_quartic(
    f: &FiniteField,
    rng: &mut ChaCha8Rng,
    star: bool,
) -> QuarticSurface<FiniteField> {
    use crate::fibration::{classify_plane_cubic, line_kind, Kodaira, LineKind};
    let q = f.q();
    let x = |i| MultiPoly::var(f, 4, i);
    let want = if star { Kodaira::IV } else { Kodaira::I(3) };
    loop {
        let mut lines = MultiPoly::one(f, 4);
        for _ in 0..3 {
            let c = random_vec(rng, q, 3);
            let l = x(0)
                .scale(&c[0])
                .add(&x(1).scale(&c[1]))
                .add(&x(2).scale(if star { &0 } else { &c[2] }));
            lines = lines.mul(&l);
        }
        let mut cubic = MultiPoly::zero(f, 4);
        for a in 0..=3u32 {
            for b in 0..=3 - a {
                for c in 0..=3 - a - b {
                    let e = [a, b, c, 3 - a - b - c];
                    cubic = cubic.add(&MultiPoly::monomial(f, 4, &e, rng.gen_range(0..q)));
                }
            }
        }
        let Ok(mut s) = QuarticSurface::new(x(2).mul(&lines).add(&x(3).mul(&cubic))) else {
            continue;
        };
        let Ok(sm) = s.smoothness_check(1) else {
            continue;
        };
        if !sm.is_smooth() {
            continue;
        }
        s.set_smoothness(sm);
        let Ok(frame) = LineFrame::new(&s, &base_line(f)) else {
            continue;
        };
        if !matches!(line_kind(&frame), Ok(LineKind::First { .. })) {
            continue;
        }
        let Ok(cubic0) = frame.residual_cubic(&P1::Finite(0)) else {
            continue;
        };
        if matches!(classify_plane_cubic(&cubic0), Ok(c) if c.kind == want) {
            return s;
        }
    }
}
