//! Built-in ring families and the raw-table constructor.

use serde::{Deserialize, Serialize};

use crate::error::{Result, RingError};
use crate::ring::{ElementId, FiniteRing, Layout, MatrixShape};
use crate::validate::{build_ring, Coverage};

pub const DEFAULT_MAX_ORDER: usize = 4096;
/// Largest characteristic accepted by [`make_gf`].
pub const GF_MAX_PRIME: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildConfig {
    pub max_order: usize,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl BuildConfig {
    pub fn with_max_order(max_order: usize) -> Self {
        BuildConfig { max_order }
    }

    fn check(&self, order: u128) -> Result<usize> {
        if order > self.max_order as u128 {
            Err(RingError::SizeCapExceeded {
                order,
                cap: self.max_order,
            })
        } else {
            Ok(order as usize)
        }
    }
}

fn tabulate(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Vec<ElementId> {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(ElementId::new(f(a, b)));
        }
    }
    table
}

/// The residue ring `Z/nZ`; element `i` is the residue `i`.
pub fn make_zmod(n: usize) -> Result<FiniteRing> {
    make_zmod_with(n, &BuildConfig::default())
}

pub fn make_zmod_with(n: usize, cfg: &BuildConfig) -> Result<FiniteRing> {
    if n == 0 {
        return Err(RingError::InvalidParameter("zmod needs n >= 1".into()));
    }
    cfg.check(n as u128)?;
    build_ring(
        n,
        tabulate(n, |a, b| (a + b) % n),
        tabulate(n, |a, b| (a * b) % n),
        format!("Z{n}"),
        Layout::Plain,
        Coverage::Adaptive,
    )
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Splits `q` into `(p, k)` with `q = p^k`, `p` prime.
fn prime_power(q: usize) -> Option<(usize, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Smallest monic irreducible `x^2 + c1 x + c0` over `F_p`, ordered by
/// `(c1, c0)`. Returns `(c0, c1)`.
pub fn smallest_irreducible_quadratic(p: usize) -> (usize, usize) {
    for c1 in 0..p {
        for c0 in 0..p {
            if (0..p).all(|x| (x * x + c1 * x + c0) % p != 0) {
                return (c0, c1);
            }
        }
    }
    unreachable!("every prime field has an irreducible quadratic")
}

/// The field with `q` elements for `q = p` or `q = p^2`, `p <= 13`.
///
/// `GF(p)` has exactly the tables of `Z/pZ`. `GF(p^2)` is `F_p[x]` modulo
/// [`smallest_irreducible_quadratic`], with id `a0 + p*a1` for `a0 + a1 x`.
pub fn make_gf(q: usize) -> Result<FiniteRing> {
    let (p, k) = prime_power(q)
        .filter(|&(p, k)| p <= GF_MAX_PRIME && k <= 2)
        .ok_or_else(|| {
            RingError::InvalidParameter(format!(
                "gf needs q = p or p^2 with p <= {GF_MAX_PRIME} prime, got {q}"
            ))
        })?;
    if k == 1 {
        let r = make_zmod(p)?;
        return Ok(r.with_label(format!("GF({p})")));
    }
    let (c0, c1) = smallest_irreducible_quadratic(p);
    let split = |id: usize| (id % p, id / p);
    let add = tabulate(q, |a, b| {
        let ((a0, a1), (b0, b1)) = (split(a), split(b));
        (a0 + b0) % p + p * ((a1 + b1) % p)
    });
    let mul = tabulate(q, |a, b| {
        let ((a0, a1), (b0, b1)) = (split(a), split(b));
        // x^2 = -c1 x - c0
        let top = a1 * b1 % p;
        let lo = (a0 * b0 + top * (p - c0)) % p;
        let hi = (a0 * b1 + a1 * b0 + top * (p - c1)) % p;
        lo + p * hi
    });
    build_ring(
        q,
        add,
        mul,
        format!("GF({q})"),
        Layout::Field {
            p: p as u32,
            degree: 2,
        },
        Coverage::Adaptive,
    )
}

/// Direct product with componentwise operations; `(a, b)` has id `a*|B| + b`.
pub fn make_product(a: &FiniteRing, b: &FiniteRing, cfg: &BuildConfig) -> Result<FiniteRing> {
    let order = cfg.check(a.order() as u128 * b.order() as u128)?;
    let m = b.order();
    let split = |id: usize| (ElementId::new(id / m), ElementId::new(id % m));
    let join = |x: ElementId, y: ElementId| x.index() * m + y.index();
    let add = tabulate(order, |u, v| {
        let ((x1, y1), (x2, y2)) = (split(u), split(v));
        join(a.add(x1, x2), b.add(y1, y2))
    });
    let mul = tabulate(order, |u, v| {
        let ((x1, y1), (x2, y2)) = (split(u), split(v));
        join(a.mul(x1, x2), b.mul(y1, y2))
    });
    build_ring(
        order,
        add,
        mul,
        format!("{} x {}", a.label(), b.label()),
        Layout::Product {
            left: Box::new(a.layout().clone()),
            right: Box::new(b.layout().clone()),
            right_order: m,
        },
        Coverage::Adaptive,
    )
}

/// `M_n(base)` under the encoding of [`MatrixShape`].
pub fn make_matrix_ring(base: &FiniteRing, n: usize, cfg: &BuildConfig) -> Result<FiniteRing> {
    if n == 0 {
        return Err(RingError::InvalidParameter(
            "matrix size must be at least 1".into(),
        ));
    }
    let order = (base.order() as u128)
        .checked_pow((n * n) as u32)
        .unwrap_or(u128::MAX);
    let order = cfg.check(order)?;
    let shape = MatrixShape::new(base.order(), n);
    let decoded: Vec<Vec<ElementId>> = (0..order)
        .map(|id| shape.decode(ElementId::new(id)))
        .collect();

    let add = tabulate(order, |u, v| {
        let entries: Vec<ElementId> = decoded[u]
            .iter()
            .zip(&decoded[v])
            .map(|(&x, &y)| base.add(x, y))
            .collect();
        shape.encode(&entries).index()
    });
    let mut entries = vec![base.zero(); n * n];
    let mul = tabulate(order, |u, v| {
        let (a, b) = (&decoded[u], &decoded[v]);
        for i in 0..n {
            for j in 0..n {
                let mut acc = base.zero();
                for k in 0..n {
                    acc = base.add(acc, base.mul(a[i * n + k], b[k * n + j]));
                }
                entries[i * n + j] = acc;
            }
        }
        shape.encode(&entries).index()
    });
    build_ring(
        order,
        add,
        mul,
        format!("M{n}({})", base.label()),
        Layout::Matrix {
            base: Box::new(base.layout().clone()),
            base_order: base.order(),
            n,
        },
        Coverage::Adaptive,
    )
}

/// Ring from explicit row-major tables. Zero and one are discovered; every
/// axiom is checked exhaustively.
pub fn make_table_ring(order: usize, add: &[u32], mul: &[u32]) -> Result<FiniteRing> {
    let to_ids = |t: &[u32]| t.iter().map(|&v| ElementId(v)).collect::<Vec<_>>();
    build_ring(
        order,
        to_ids(add),
        to_ids(mul),
        format!("table({order})"),
        Layout::Plain,
        Coverage::Exhaustive,
    )
}

/// Identity matrix unit `E_ij` (1-based) in `M_n(base)`.
pub fn matrix_unit(base: &FiniteRing, n: usize, i: usize, j: usize) -> ElementId {
    let mut entries = vec![base.zero(); n * n];
    entries[(i - 1) * n + (j - 1)] = base.one();
    MatrixShape::new(base.order(), n).encode(&entries)
}
