//! Directed quotient lattice graphs on `Z^n / Λ` with edges `x -> x + e_i`
//! weighted by `v_i`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial, format_rational, lcm_denominators, Rational};
use crate::lattice::{Lattice, QuotientGroup};

/// Upper limit on the vertex count accepted by [`build_graph`].
pub const MAX_VERTICES: u64 = 50_000_000;

#[derive(Clone, Debug)]
pub struct QuotientGraph {
    n: usize,
    group: QuotientGroup,
    radices: Vec<u64>,
    strides: Vec<u64>,
    /// Mixed-radix digits of the image of each `e_i`.
    generators: Vec<Vec<u64>>,
    weights: Vec<Rational>,
    order: u64,
}

pub fn build_graph(sub: &Lattice, v: &[Rational]) -> Result<QuotientGraph> {
    let n = sub.dim();
    if v.len() != n {
        return Err(Error::Dimension("one weight per coordinate is required".into()));
    }
    if v.iter().any(|w| !w.is_positive()) {
        return Err(Error::InvalidArgument("weights must be positive".into()));
    }
    let group = QuotientGroup::new(sub)?;
    let order = group
        .order()
        .to_u64()
        .filter(|&o| o <= MAX_VERTICES)
        .ok_or_else(|| Error::Budget(format!("quotient has {} cosets", group.order())))?;
    let radices: Vec<u64> = group.nontrivial_factors().iter().map(|d| d.to_u64().expect("fits")).collect();
    let mut strides = Vec::with_capacity(radices.len());
    let mut acc = 1u64;
    for r in &radices {
        strides.push(acc);
        acc *= r;
    }
    let generators = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            group.short_coords(&e).iter().map(|c| c.to_u64().expect("fits")).collect()
        })
        .collect();
    Ok(QuotientGraph { n, group, radices, strides, generators, weights: v.to_vec(), order })
}

impl QuotientGraph {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> u64 {
        self.order
    }

    pub fn edge_count(&self) -> u64 {
        self.order * self.n as u64
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn group(&self) -> &QuotientGroup {
        &self.group
    }

    pub fn digits(&self, idx: u64) -> Vec<u64> {
        self.radices.iter().zip(&self.strides).map(|(r, s)| idx / s % r).collect()
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }

    /// Vertex index of the coset of an integer vector.
    pub fn coset_index(&self, x: &[BigInt]) -> u64 {
        let c: Vec<u64> = self.group.short_coords(x).iter().map(|c| c.to_u64().expect("fits")).collect();
        self.encode(&c)
    }

    /// An integer vector in the coset with the given index.
    pub fn representative(&self, idx: u64) -> Vec<BigInt> {
        let digits = self.digits(idx);
        let mut full = Vec::with_capacity(self.n);
        let mut k = 0;
        for d in self.group.invariant_factors() {
            if d.is_one() {
                full.push(BigInt::zero());
            } else {
                full.push(BigInt::from(digits[k]));
                k += 1;
            }
        }
        self.group.representative(&full)
    }

    /// Head of the edge leaving `idx` along `e_i`.
    pub fn neighbor(&self, idx: u64, i: usize) -> u64 {
        let mut out = 0;
        for ((r, s), g) in self.radices.iter().zip(&self.strides).zip(&self.generators[i]) {
            let d = idx / s % r;
            out += (d + g) % r * s;
        }
        out
    }

    fn uniform_weight(&self) -> Option<&Rational> {
        let w = &self.weights[0];
        self.weights.iter().all(|x| x == w).then_some(w)
    }

    /// Shortest directed path lengths from the zero coset, indexed by vertex.
    pub fn distances_from_origin(&self) -> Vec<Rational> {
        match self.uniform_weight() {
            Some(w) => self.bfs().into_iter().map(|d| w * Rational::from_integer(BigInt::from(d))).collect(),
            None => {
                let (scaled, l) = self.integer_weights();
                let lr = Rational::from_integer(l);
                self.dijkstra(&scaled)
                    .into_iter()
                    .map(|d| Rational::from_integer(BigInt::from(d)) / &lr)
                    .collect()
            }
        }
    }

    /// Hop counts from the zero coset.
    pub fn bfs(&self) -> Vec<u32> {
        let m = self.order as usize;
        let mut dist = vec![u32::MAX; m];
        let mut queue = std::collections::VecDeque::with_capacity(m);
        dist[0] = 0;
        queue.push_back(0u64);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            for i in 0..self.n {
                let y = self.neighbor(x, i) as usize;
                if dist[y] == u32::MAX {
                    dist[y] = dx + 1;
                    queue.push_back(y as u64);
                }
            }
        }
        dist
    }

    fn dijkstra(&self, w: &[u128]) -> Vec<u128> {
        let m = self.order as usize;
        let mut dist = vec![u128::MAX; m];
        let mut heap = BinaryHeap::new();
        dist[0] = 0;
        heap.push(Reverse((0u128, 0u64)));
        while let Some(Reverse((d, x))) = heap.pop() {
            if d > dist[x as usize] {
                continue;
            }
            for (i, wi) in w.iter().enumerate() {
                let y = self.neighbor(x, i) as usize;
                let nd = d + wi;
                if nd < dist[y] {
                    dist[y] = nd;
                    heap.push(Reverse((nd, y as u64)));
                }
            }
        }
        dist
    }

    /// Largest distance from the zero coset and a vertex attaining it.
    pub fn diameter_with_witness(&self) -> (Rational, u64) {
        fn argmax<T: Ord + Copy>(d: &[T]) -> (T, u64) {
            let mut best = (d[0], 0u64);
            for (i, &x) in d.iter().enumerate() {
                if x > best.0 {
                    best = (x, i as u64);
                }
            }
            best
        }
        match self.uniform_weight() {
            Some(w) => {
                let (d, i) = argmax(&self.bfs());
                (w * Rational::from_integer(BigInt::from(d)), i)
            }
            None => {
                let (scaled, l) = self.integer_weights();
                let (d, i) = argmax(&self.dijkstra(&scaled));
                (Rational::new(BigInt::from(d), l), i)
            }
        }
    }

    fn integer_weights(&self) -> (Vec<u128>, BigInt) {
        let l = lcm_denominators(&self.weights);
        let scaled = self
            .weights
            .iter()
            .map(|w| (w * Rational::from_integer(l.clone())).to_integer().to_u128().expect("weight fits"))
            .collect();
        (scaled, l)
    }

    pub fn diameter(&self) -> Rational {
        self.diameter_with_witness().0
    }

    /// Graphviz rendering; vertices are labelled by coset representatives.
    pub fn to_dot(&self) -> Result<String> {
        if self.order > 4096 {
            return Err(Error::Budget("graph too large to render".into()));
        }
        let mut s = String::from("digraph quotient {\n");
        for x in 0..self.order {
            let rep: Vec<String> = self.representative(x).iter().map(|c| c.to_string()).collect();
            let _ = writeln!(s, "  v{x} [label=\"({})\"];", rep.join(","));
        }
        for x in 0..self.order {
            for i in 0..self.n {
                let _ = writeln!(
                    s,
                    "  v{x} -> v{} [label=\"e{} ({})\"];",
                    self.neighbor(x, i),
                    i + 1,
                    format_rational(&self.weights[i])
                );
            }
        }
        s.push_str("}\n");
        Ok(s)
    }
}

pub fn distances_from_origin(g: &QuotientGraph) -> Vec<Rational> {
    g.distances_from_origin()
}

pub fn diameter(g: &QuotientGraph) -> Rational {
    g.diameter()
}

/// Covering radius of `{x >= 0 : v . x <= 1}` with respect to an integral
/// sublattice: the weighted diameter plus the sum of the weights.
pub fn simplex_covering_radius(v: &[Rational], sub: &Lattice) -> Result<Rational> {
    let g = build_graph(sub, v)?;
    let s: Rational = v.iter().sum();
    Ok(g.diameter() + s)
}

/// `sum_i [w_i + r]_{n+1}`.
pub fn sigma_w(w: &[i64], r: i64, n: usize) -> i64 {
    let m = n as i64 + 1;
    w.iter().map(|&wi| (wi + r).mod_floor(&m)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma46Report {
    pub n: usize,
    pub w: Vec<i64>,
    pub values: Vec<i64>,
    pub sum_matches: bool,
    pub passes: bool,
}

/// Checks the value pattern of `sigma_w(0..=n)`: all distinct for even `n`;
/// for odd `n` no value three times and all differences even. Also checks
/// that the values sum to `(n+1) C(n,2)`.
pub fn lemma46_check(n: usize, w: &[i64]) -> Result<Lemma46Report> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    if w.len() != n - 1 {
        return Err(Error::Dimension("w must have n-1 entries".into()));
    }
    let values: Vec<i64> = (0..=n as i64).map(|r| sigma_w(w, r, n)).collect();
    let want = (n as i64 + 1) * binomial(n as u32, 2).to_i64().expect("small");
    let sum_matches = values.iter().sum::<i64>() == want;
    let mut sorted = values.clone();
    sorted.sort_unstable();
    let pattern = if n % 2 == 0 {
        sorted.windows(2).all(|p| p[0] != p[1])
    } else {
        sorted.windows(3).all(|p| !(p[0] == p[1] && p[1] == p[2]))
            && values.iter().all(|v| (v - values[0]) % 2 == 0)
    };
    Ok(Lemma46Report { n, w: w.to_vec(), values, sum_matches, passes: pattern && sum_matches })
}

/// The vertex `(2, 3, ..., n, 0)` at maximal distance in the makai graph.
pub fn makai_witness(n: usize) -> Vec<BigInt> {
    let mut w: Vec<BigInt> = (2..=n as i64).map(BigInt::from).collect();
    w.push(BigInt::zero());
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::lattice::special_lattice;

    fn ones(n: usize) -> Vec<Rational> {
        vec![int(1); n]
    }

    #[test]
    fn trivial_group() {
        let g = build_graph(&Lattice::integer(3), &ones(3)).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.neighbor(0, 2), 0);
        assert_eq!(g.distances_from_origin(), vec![int(0)]);
        assert_eq!(g.diameter(), int(0));
    }

    #[test]
    fn doubled_lattice() {
        let two = Lattice::integer(2).scaled(&int(2)).unwrap();
        let g = build_graph(&two, &ones(2)).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 8);
        let d = g.distances_from_origin();
        let at = |x: i64, y: i64| d[g.coset_index(&[BigInt::from(x), BigInt::from(y)]) as usize].clone();
        assert_eq!(at(1, 0), int(1));
        assert_eq!(at(0, 1), int(1));
        assert_eq!(at(1, 1), int(2));
        assert_eq!(simplex_covering_radius(&ones(2), &two).unwrap(), int(4));
    }

    #[test]
    fn makai_graphs() {
        for n in 2..=5 {
            let l = special_lattice("makai", n).unwrap();
            let g = build_graph(&l, &ones(n)).unwrap();
            let c = Rational::from_integer(binomial(n as u32, 2));
            assert_eq!(g.diameter(), c);
            let d = g.distances_from_origin();
            assert_eq!(d[g.coset_index(&makai_witness(n)) as usize], c);
            let mu = simplex_covering_radius(&ones(n), &l).unwrap() / int(n as i64 + 1);
            assert_eq!(mu, rat(n as i64, 2));
        }
    }

    #[test]
    fn weighted_scaling() {
        let l = special_lattice("makai", 3).unwrap();
        let v = vec![int(1), rat(1, 2), rat(3, 2)];
        let g = build_graph(&l, &v).unwrap();
        let g2 = build_graph(&l, &v.iter().map(|x| x * rat(2, 3)).collect::<Vec<_>>()).unwrap();
        assert_eq!(g2.diameter(), g.diameter() * rat(2, 3));
        assert!(build_graph(&l, &[int(1), int(0), int(1)]).is_err());
    }

    #[test]
    fn representatives_round_trip() {
        let l = special_lattice("makai", 3).unwrap();
        let g = build_graph(&l, &ones(3)).unwrap();
        for x in 0..g.vertex_count() {
            assert_eq!(g.coset_index(&g.representative(x)), x);
        }
        assert!(g.to_dot().unwrap().contains("->"));
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma_w(&[0, 0], 0, 3), 0);
        let v: Vec<i64> = (0..4).map(|r| sigma_w(&[2, 3], r, 3)).collect();
        assert_eq!(v, vec![5, 3, 1, 3]);
        assert!(lemma46_check(3, &[2, 3]).unwrap().passes);
        let r = lemma46_check(2, &[0]).unwrap();
        assert_eq!(r.values, vec![0, 1, 2]);
        assert!(r.passes);
    }
}
