//! Rings with involution.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::construct::{make_matrix_ring, make_product, BuildConfig};
use crate::error::{Result, RingError};
use crate::ring::{ElementId, FiniteRing, Layout, MatrixShape};
use crate::sets::StructureSets;
use crate::validate::{build_ring, validate_involution, Coverage};

/// A validated finite ring together with an involution `x -> x*`.
///
/// The structural sets (idempotents, projections, units) are computed on
/// first use and cached; concurrent first calls resolve to one computation.
#[derive(Clone)]
pub struct StarRing {
    ring: FiniteRing,
    star: Vec<ElementId>,
    involution: String,
    sets: Arc<OnceLock<StructureSets>>,
}

impl fmt::Debug for StarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StarRing")
            .field("label", &self.label())
            .field("order", &self.ring.order())
            .finish_non_exhaustive()
    }
}

impl PartialEq for StarRing {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_tables(&other.ring) && self.star == other.star
    }
}

impl Eq for StarRing {}

/// Attaches `star` to `ring` after checking all involution axioms.
pub fn attach_involution(ring: FiniteRing, star: Vec<ElementId>) -> Result<StarRing> {
    StarRing::new(ring, star, "table")
}

impl StarRing {
    pub fn new(
        ring: FiniteRing,
        star: Vec<ElementId>,
        involution: impl Into<String>,
    ) -> Result<Self> {
        validate_involution(&ring, &star)?;
        Ok(StarRing {
            ring,
            star,
            involution: involution.into(),
            sets: Arc::new(OnceLock::new()),
        })
    }

    /// The identity map; an involution exactly when the ring is commutative.
    pub fn with_identity(ring: FiniteRing) -> Result<Self> {
        let star = ring.elements().collect();
        StarRing::new(ring, star, "identity")
    }

    /// `GF(p^2)` with the Frobenius map `x -> x^p`.
    pub fn frobenius(field: FiniteRing) -> Result<Self> {
        let p = match field.layout() {
            Layout::Field { p, degree: 2 } => *p,
            _ => {
                return Err(RingError::InvolutionInadmissible {
                    involution: "frobenius".into(),
                    reason: format!("{} is not a field of order p^2", field.label()),
                })
            }
        };
        let star = field
            .elements()
            .map(|x| (1..p).fold(x, |acc, _| field.mul(acc, x)))
            .collect();
        StarRing::new(field, star, "frobenius")
    }

    /// `A x A` with `(a, b)* = (b, a)`.
    pub fn swap_product(factor: &FiniteRing, cfg: &BuildConfig) -> Result<Self> {
        let ring = make_product(factor, factor, cfg)?;
        let m = factor.order();
        let star = ring
            .elements()
            .map(|id| ElementId::new((id.index() % m) * m + id.index() / m))
            .collect();
        StarRing::new(ring, star, "swap")
    }

    /// `A x B` with `(a, b)* = (a*, b*)`.
    pub fn componentwise_product(a: &StarRing, b: &StarRing, cfg: &BuildConfig) -> Result<Self> {
        let ring = make_product(&a.ring, &b.ring, cfg)?;
        let m = b.ring.order();
        let star = ring
            .elements()
            .map(|id| {
                let x = a.star(ElementId::new(id.index() / m));
                let y = b.star(ElementId::new(id.index() % m));
                ElementId::new(x.index() * m + y.index())
            })
            .collect();
        let label = format!("componentwise({}, {})", a.involution, b.involution);
        StarRing::new(ring, star, label)
    }

    /// `M_n(S)` with `A*` the transpose of `(a_ij*)`.
    pub fn matrix(base: &StarRing, n: usize, cfg: &BuildConfig) -> Result<Self> {
        let ring = make_matrix_ring(&base.ring, n, cfg)?;
        let shape = MatrixShape::new(base.ring.order(), n);
        let mut out = vec![base.ring.zero(); n * n];
        let star = ring
            .elements()
            .map(|id| {
                let entries = shape.decode(id);
                for i in 0..n {
                    for j in 0..n {
                        out[j * n + i] = base.star(entries[i * n + j]);
                    }
                }
                shape.encode(&out)
            })
            .collect();
        let label = if base.involution == "identity" {
            "transpose".to_string()
        } else {
            format!("conjugate-transpose({})", base.involution)
        };
        StarRing::new(ring, star, label)
    }

    #[inline]
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    #[inline]
    pub fn star(&self, x: ElementId) -> ElementId {
        self.star[x.index()]
    }

    pub fn star_table(&self) -> &[ElementId] {
        &self.star
    }

    pub fn involution_name(&self) -> &str {
        &self.involution
    }

    pub fn order(&self) -> usize {
        self.ring.order()
    }

    pub fn label(&self) -> String {
        format!("{} / {}", self.ring.label(), self.involution)
    }

    pub fn sets(&self) -> &StructureSets {
        self.sets.get_or_init(|| StructureSets::compute(self))
    }

    #[inline]
    pub fn is_projection(&self, p: ElementId) -> bool {
        self.ring.mul(p, p) == p && self.star(p) == p
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.ring = self.ring.with_label(label);
        self
    }
}

/// A corner ring `pRp` with its embedding back into `R`.
#[derive(Clone, Debug)]
pub struct CornerRing {
    pub ring: StarRing,
    pub projection: ElementId,
    /// `embedding[i]` is the element of `R` that corner element `i` represents.
    pub embedding: Vec<ElementId>,
    position: Vec<Option<ElementId>>,
}

impl CornerRing {
    pub fn lift(&self, x: ElementId) -> ElementId {
        self.embedding[x.index()]
    }

    /// The corner id of `a`, when `a` lies in `pRp`.
    pub fn restrict(&self, a: ElementId) -> Option<ElementId> {
        self.position.get(a.index()).copied().flatten()
    }
}

/// Builds `pRp` for a projection `p`, with identity `p` and the restricted
/// involution.
pub fn make_corner_ring(s: &StarRing, p: ElementId) -> Result<CornerRing> {
    let r = s.ring();
    r.check_element(p)?;
    if !s.is_projection(p) {
        return Err(RingError::InvalidProjection(p));
    }
    let mut member = vec![false; r.order()];
    for x in r.elements() {
        member[r.mul(r.mul(p, x), p).index()] = true;
    }
    let embedding: Vec<ElementId> = r.elements().filter(|x| member[x.index()]).collect();
    let mut position = vec![None; r.order()];
    for (i, &e) in embedding.iter().enumerate() {
        position[e.index()] = Some(ElementId::new(i));
    }
    let k = embedding.len();
    let pos = |e: ElementId| position[e.index()].expect("corner is closed under ring operations");
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &a in &embedding {
        for &b in &embedding {
            add.push(pos(r.add(a, b)));
            mul.push(pos(r.mul(a, b)));
        }
    }
    let ring = build_ring(
        k,
        add,
        mul,
        format!("{}[p={}]", r.label(), p),
        Layout::Corner {
            base: Box::new(r.layout().clone()),
            embedding: embedding.clone().into(),
        },
        Coverage::Adaptive,
    )?;
    let star = embedding.iter().map(|&e| pos(s.star(e))).collect();
    let ring = StarRing::new(ring, star, format!("inherited({})", s.involution))?;
    Ok(CornerRing {
        ring,
        projection: p,
        embedding,
        position,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{make_gf, make_zmod, matrix_unit};
    use crate::validate::InvolutionAxiom;

    fn z(n: usize) -> FiniteRing {
        make_zmod(n).unwrap()
    }

    #[test]
    fn swap_on_boolean_square() {
        let s = StarRing::swap_product(&z(2), &BuildConfig::default()).unwrap();
        // (1,0) has id 2, (0,1) has id 1
        assert_eq!(s.star(ElementId(2)), ElementId(1));
        assert_eq!(s.star(ElementId(3)), ElementId(3));
    }

    #[test]
    fn identity_on_noncommutative_fails_at_e11_e12() {
        let m = make_matrix_ring(&z(2), 2, &BuildConfig::default()).unwrap();
        let e11 = matrix_unit(&z(2), 2, 1, 1);
        let e12 = matrix_unit(&z(2), 2, 1, 2);
        assert_eq!(
            StarRing::with_identity(m).unwrap_err(),
            RingError::InvolutionViolation {
                axiom: InvolutionAxiom::AntiMultiplicative,
                witness: vec![e11, e12],
            }
        );
        assert!(StarRing::with_identity(z(4)).is_ok());
    }

    #[test]
    fn non_permutation_is_rejected() {
        let err =
            attach_involution(z(3), vec![ElementId(0), ElementId(0), ElementId(2)]).unwrap_err();
        assert!(matches!(
            err,
            RingError::InvolutionViolation {
                axiom: InvolutionAxiom::Permutation,
                ..
            }
        ));
        // a permutation that is not additive
        let err = attach_involution(
            z(3),
            vec![ElementId(0), ElementId(1), ElementId(2)]
                .into_iter()
                .rev()
                .collect(),
        )
        .unwrap_err();
        assert!(matches!(err, RingError::InvolutionViolation { .. }));
    }

    #[test]
    fn frobenius_needs_quadratic_field() {
        assert!(StarRing::frobenius(make_gf(4).unwrap()).is_ok());
        assert!(matches!(
            StarRing::frobenius(make_gf(5).unwrap()),
            Err(RingError::InvolutionInadmissible { .. })
        ));
        let f9 = StarRing::frobenius(make_gf(9).unwrap()).unwrap();
        assert!(f9.ring().elements().any(|x| f9.star(x) != x));
    }

    #[test]
    fn corners_of_matrix_ring() {
        let base = StarRing::with_identity(z(2)).unwrap();
        let m = StarRing::matrix(&base, 2, &BuildConfig::default()).unwrap();
        let e11 = matrix_unit(&z(2), 2, 1, 1);
        let c = make_corner_ring(&m, e11).unwrap();
        assert_eq!(c.ring.order(), 2);
        assert!(c.ring.ring().same_tables(&z(2)));
        assert_eq!(c.lift(c.ring.ring().one()), e11);

        let whole = make_corner_ring(&m, m.ring().one()).unwrap();
        assert_eq!(whole.embedding, m.ring().elements().collect::<Vec<_>>());
        assert!(whole.ring.ring().same_tables(m.ring()));

        let trivial = make_corner_ring(&m, m.ring().zero()).unwrap();
        assert_eq!(trivial.ring.order(), 1);

        // E12 is not a projection
        let e12 = matrix_unit(&z(2), 2, 1, 2);
        assert_eq!(
            make_corner_ring(&m, e12).unwrap_err(),
            RingError::InvalidProjection(e12)
        );
    }
}
