//! Cartesian products with an explicit coordinate bijection.

use crate::error::GraphError;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Default cap on product order; exact Roman domination is hopeless beyond it.
pub const DEFAULT_PRODUCT_CAP: usize = 4096;

/// `G □ H` with vertex `(u, v)` stored at id `u * |V(H)| + v`.
#[derive(Clone, Debug)]
pub struct LabeledProduct {
    product: Graph,
    g_order: usize,
    h_order: usize,
}

impl LabeledProduct {
    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.product
    }

    #[inline]
    pub fn g_order(&self) -> usize {
        self.g_order
    }

    #[inline]
    pub fn h_order(&self) -> usize {
        self.h_order
    }

    #[inline]
    pub fn encode(&self, u: usize, v: usize) -> usize {
        debug_assert!(u < self.g_order && v < self.h_order);
        u * self.h_order + v
    }

    #[inline]
    pub fn decode(&self, id: usize) -> (usize, usize) {
        (id / self.h_order, id % self.h_order)
    }

    pub fn try_encode(&self, u: usize, v: usize) -> Result<usize, GraphError> {
        if u >= self.g_order {
            return Err(GraphError::VertexOutOfRange {
                vertex: u,
                order: self.g_order,
            });
        }
        if v >= self.h_order {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.h_order,
            });
        }
        Ok(self.encode(u, v))
    }

    /// Product ids of a set of coordinate pairs.
    pub fn set_from_pairs<I>(&self, pairs: I) -> Result<VertexSet, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = VertexSet::empty(self.product.order());
        for (u, v) in pairs {
            out.insert(self.try_encode(u, v)?);
        }
        Ok(out)
    }

    /// Members of a product set as `(u, v)` pairs in ascending id order.
    pub fn pairs_of(&self, set: &VertexSet) -> Vec<(usize, usize)> {
        set.iter().map(|id| self.decode(id)).collect()
    }

    /// The cylinder `block × V(H)`.
    pub fn row_cylinder(&self, block: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.product.order());
        for u in block {
            for v in 0..self.h_order {
                out.insert(self.encode(u, v));
            }
        }
        out
    }

    /// The fiber `block × {v}`.
    pub fn column_fiber(&self, block: &VertexSet, v: usize) -> VertexSet {
        let mut out = VertexSet::empty(self.product.order());
        for u in block {
            out.insert(self.encode(u, v));
        }
        out
    }
}

/// Builds `G □ H` under the default order cap.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<LabeledProduct, GraphError> {
    cartesian_product_capped(g, h, DEFAULT_PRODUCT_CAP)
}

pub fn cartesian_product_capped(
    g: &Graph,
    h: &Graph,
    cap: usize,
) -> Result<LabeledProduct, GraphError> {
    let (g_order, h_order) = (g.order(), h.order());
    let order = g_order
        .checked_mul(h_order)
        .ok_or(GraphError::ProductTooLarge {
            order: usize::MAX,
            cap,
        })?;
    if order > cap {
        return Err(GraphError::ProductTooLarge { order, cap });
    }
    let id = |u: usize, v: usize| u * h_order + v;
    let mut edges = Vec::with_capacity(g_order * h.size() + h_order * g.size());
    for u in 0..g_order {
        for (a, b) in h.edges() {
            edges.push((id(u, a), id(u, b)));
        }
    }
    for v in 0..h_order {
        for (a, b) in g.edges() {
            edges.push((id(a, v), id(b, v)));
        }
    }
    Ok(LabeledProduct {
        product: Graph::new(order, edges)?,
        g_order,
        h_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn k2_square_k2_is_c4() {
        let k2 = path(2);
        let p = cartesian_product(&k2, &k2).unwrap();
        assert_eq!(p.graph().order(), 4);
        assert_eq!(p.graph().size(), 4);
        assert!(p.graph().degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn k1_is_identity_factor() {
        let h = Graph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let p = cartesian_product(&Graph::edgeless(1).unwrap(), &h).unwrap();
        assert_eq!(p.graph(), &h);
    }

    #[test]
    fn p3_square_p3_counts() {
        let p = cartesian_product(&path(3), &path(3)).unwrap();
        assert_eq!(p.graph().order(), 9);
        assert_eq!(p.graph().size(), 12);
    }

    #[test]
    fn encode_decode_bijection() {
        let p = cartesian_product(&path(3), &path(5)).unwrap();
        for u in 0..3 {
            for v in 0..5 {
                assert_eq!(p.decode(p.encode(u, v)), (u, v));
            }
        }
        assert!(p.try_encode(3, 0).is_err());
    }

    #[test]
    fn cap_enforced() {
        let err = cartesian_product_capped(&path(10), &path(10), 99).unwrap_err();
        assert_eq!(
            err,
            GraphError::ProductTooLarge {
                order: 100,
                cap: 99
            }
        );
        assert!(cartesian_product_capped(&path(10), &path(10), 100).is_ok());
    }
}
