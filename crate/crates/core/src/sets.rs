//! Idempotents, projections, units, annihilators and principal ideals.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RingError};
use crate::ring::{ElementId, FiniteRing};
use crate::star::StarRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Idempotents,
    Projections,
    Units,
    CentralIdempotents,
}

impl SetKind {
    pub const ALL: [SetKind; 4] = [
        SetKind::Idempotents,
        SetKind::Projections,
        SetKind::Units,
        SetKind::CentralIdempotents,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetKind::Idempotents => "idempotents",
            SetKind::Projections => "projections",
            SetKind::Units => "units",
            SetKind::CentralIdempotents => "central-idempotents",
        }
    }
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SetKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown set kind `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

/// Cached structural subsets of one *-ring, each sorted by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureSets {
    pub idempotents: Vec<ElementId>,
    pub projections: Vec<ElementId>,
    pub units: Vec<ElementId>,
    pub central_idempotents: Vec<ElementId>,
    inverse: Vec<Option<ElementId>>,
    idempotent_flag: Vec<bool>,
    projection_flag: Vec<bool>,
}

impl StructureSets {
    pub fn compute(s: &StarRing) -> Self {
        let r = s.ring();
        let n = r.order();
        let idempotent_flag: Vec<bool> = r.elements().map(|x| r.mul(x, x) == x).collect();
        let projection_flag: Vec<bool> = r
            .elements()
            .map(|x| idempotent_flag[x.index()] && s.star(x) == x)
            .collect();

        let mut inverse = vec![None; n];
        for x in r.elements() {
            if inverse[x.index()].is_some() {
                continue;
            }
            if let Some(y) = r
                .elements()
                .find(|&y| r.mul(x, y) == r.one() && r.mul(y, x) == r.one())
            {
                inverse[x.index()] = Some(y);
                inverse[y.index()] = Some(x);
            }
        }

        let pick = |flags: &[bool]| -> Vec<ElementId> {
            r.elements().filter(|x| flags[x.index()]).collect()
        };
        let idempotents = pick(&idempotent_flag);
        let central_idempotents = idempotents
            .iter()
            .copied()
            .filter(|&e| r.elements().all(|x| r.commutes(e, x)))
            .collect();
        StructureSets {
            projections: pick(&projection_flag),
            units: r
                .elements()
                .filter(|x| inverse[x.index()].is_some())
                .collect(),
            idempotents,
            central_idempotents,
            inverse,
            idempotent_flag,
            projection_flag,
        }
    }

    pub fn get(&self, kind: SetKind) -> &[ElementId] {
        match kind {
            SetKind::Idempotents => &self.idempotents,
            SetKind::Projections => &self.projections,
            SetKind::Units => &self.units,
            SetKind::CentralIdempotents => &self.central_idempotents,
        }
    }

    #[inline]
    pub fn is_unit(&self, x: ElementId) -> bool {
        self.inverse[x.index()].is_some()
    }

    #[inline]
    pub fn is_idempotent(&self, x: ElementId) -> bool {
        self.idempotent_flag[x.index()]
    }

    #[inline]
    pub fn is_projection(&self, x: ElementId) -> bool {
        self.projection_flag[x.index()]
    }

    #[inline]
    pub fn inverse_of(&self, u: ElementId) -> Option<ElementId> {
        self.inverse[u.index()]
    }

    /// Whether every idempotent is self-adjoint.
    pub fn projections_equal_idempotents(&self) -> bool {
        self.projections == self.idempotents
    }
}

pub fn enumerate_set(s: &StarRing, kind: SetKind) -> &[ElementId] {
    s.sets().get(kind)
}

/// `r(X) = {y : xy = 0 for all x in X}` or `l(X) = {y : yx = 0 ...}`.
pub fn annihilator(r: &FiniteRing, xs: &[ElementId], side: Side) -> Vec<ElementId> {
    r.elements()
        .filter(|&y| {
            xs.iter().all(|&x| {
                let p = match side {
                    Side::Right => r.mul(x, y),
                    Side::Left => r.mul(y, x),
                };
                p == r.zero()
            })
        })
        .collect()
}

/// `Ra` for [`Side::Left`], `aR` for [`Side::Right`].
pub fn principal_ideal(r: &FiniteRing, a: ElementId, side: Side) -> Vec<ElementId> {
    let mut member = vec![false; r.order()];
    for x in r.elements() {
        let p = match side {
            Side::Left => r.mul(x, a),
            Side::Right => r.mul(a, x),
        };
        member[p.index()] = true;
    }
    r.elements().filter(|x| member[x.index()]).collect()
}

/// The two-sided inverse of `u`, found by scanning.
pub fn inverse(r: &FiniteRing, u: ElementId) -> Result<ElementId> {
    r.check_element(u)?;
    r.elements()
        .find(|&y| r.mul(u, y) == r.one() && r.mul(y, u) == r.one())
        .ok_or(RingError::NotAUnit(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{make_zmod, BuildConfig};

    fn ids(v: &[u32]) -> Vec<ElementId> {
        v.iter().map(|&i| ElementId(i)).collect()
    }

    #[test]
    fn z4_sets() {
        let s = StarRing::with_identity(make_zmod(4).unwrap()).unwrap();
        assert_eq!(enumerate_set(&s, SetKind::Idempotents), ids(&[0, 1]));
        assert_eq!(enumerate_set(&s, SetKind::Units), ids(&[1, 3]));
        assert_eq!(enumerate_set(&s, SetKind::Projections), ids(&[0, 1]));
    }

    #[test]
    fn swap_projections() {
        let s = StarRing::swap_product(&make_zmod(2).unwrap(), &BuildConfig::default()).unwrap();
        assert_eq!(enumerate_set(&s, SetKind::Projections), ids(&[0, 3]));
        assert_eq!(enumerate_set(&s, SetKind::Idempotents), ids(&[0, 1, 2, 3]));
        assert_eq!(
            enumerate_set(&s, SetKind::CentralIdempotents),
            ids(&[0, 1, 2, 3])
        );
    }

    #[test]
    fn annihilators_and_ideals() {
        let r = make_zmod(4).unwrap();
        assert_eq!(annihilator(&r, &ids(&[2]), Side::Right), ids(&[0, 2]));
        assert_eq!(annihilator(&r, &ids(&[1]), Side::Right), ids(&[0]));
        assert_eq!(annihilator(&r, &[], Side::Left), ids(&[0, 1, 2, 3]));
        assert_eq!(principal_ideal(&r, ElementId(2), Side::Left), ids(&[0, 2]));
        assert_eq!(principal_ideal(&r, ElementId(0), Side::Left), ids(&[0]));
        assert_eq!(
            principal_ideal(&r, ElementId(1), Side::Right),
            ids(&[0, 1, 2, 3])
        );
    }

    #[test]
    fn inverses() {
        let r = make_zmod(4).unwrap();
        assert_eq!(inverse(&r, ElementId(3)), Ok(ElementId(3)));
        assert_eq!(inverse(&r, ElementId(1)), Ok(ElementId(1)));
        assert_eq!(
            inverse(&r, ElementId(2)),
            Err(RingError::NotAUnit(ElementId(2)))
        );
    }

    #[test]
    fn set_kind_names_round_trip() {
        for k in SetKind::ALL {
            assert_eq!(k.name().parse::<SetKind>(), Ok(k));
        }
    }
}
