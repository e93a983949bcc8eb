//! Small independent reference arithmetic on `i128` fractions, used to
//! cross-check the library. Overflow panics rather than wrapping.

use std::cmp::Ordering;
use std::fmt;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Q {
    pub n: i128,
    pub d: i128,
}

impl Q {
    pub fn new(n: i128, d: i128) -> Q {
        assert!(d != 0, "oracle: zero denominator");
        let g = gcd(n, d).max(1);
        let s = if d < 0 { -1 } else { 1 };
        Q { n: s * n / g, d: s * d / g }
    }

    pub fn int(n: i128) -> Q {
        Q { n, d: 1 }
    }

    pub fn is_zero(self) -> bool {
        self.n == 0
    }

    pub fn add(self, o: Q) -> Q {
        let n = self.n.checked_mul(o.d).and_then(|x| x.checked_add(o.n.checked_mul(self.d)?));
        Q::new(n.expect("oracle overflow"), self.d.checked_mul(o.d).expect("oracle overflow"))
    }

    pub fn neg(self) -> Q {
        Q { n: -self.n, d: self.d }
    }

    pub fn sub(self, o: Q) -> Q {
        self.add(o.neg())
    }

    pub fn mul(self, o: Q) -> Q {
        let g1 = gcd(self.n, o.d).max(1);
        let g2 = gcd(o.n, self.d).max(1);
        let n = (self.n / g1).checked_mul(o.n / g2).expect("oracle overflow");
        let d = (self.d / g2).checked_mul(o.d / g1).expect("oracle overflow");
        Q::new(n, d)
    }

    pub fn inv(self) -> Q {
        Q::new(self.d, self.n)
    }

    pub fn div(self, o: Q) -> Q {
        self.mul(o.inv())
    }

    pub fn abs(self) -> Q {
        Q { n: self.n.abs(), d: self.d }
    }

    /// `v_p` by repeated division; `None` for zero.
    pub fn val(self, p: i128) -> Option<i64> {
        if self.n == 0 {
            return None;
        }
        let count = |mut m: i128| {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            k
        };
        Some(count(self.n) - count(self.d))
    }

    /// `|x|_p` as an exact fraction.
    pub fn pnorm(self, p: i128) -> Q {
        match self.val(p) {
            None => Q::int(0),
            Some(v) if v >= 0 => Q::new(1, p.pow(v as u32)),
            Some(v) => Q::int(p.pow((-v) as u32)),
        }
    }

    pub fn parse(s: &str) -> Q {
        match s.split_once('/') {
            Some((n, d)) => Q::new(n.parse().unwrap(), d.parse().unwrap()),
            None => Q::int(s.parse().unwrap()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        (self.n * o.d).cmp(&(o.n * self.d))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.n, self.d)
    }
}

pub fn primes_below(limit: i128) -> Vec<i128> {
    (2..=limit).filter(|&n| (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)).collect()
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Roots of `c x² + (d − a) x − b = 0`, ascending, or `None` if irrational.
pub fn fixed_points(m: [Q; 4]) -> Option<Vec<Q>> {
    let [a, b, c, d] = m;
    assert!(!c.is_zero());
    // Clear denominators: A x² + B x + C with integers.
    let (qa, qb, qc) = (c, d.sub(a), b.neg());
    let l = qa.d * qb.d / gcd(qa.d, qb.d);
    let l = l * qc.d / gcd(l, qc.d);
    let (ia, ib, ic) = (qa.n * (l / qa.d), qb.n * (l / qb.d), qc.n * (l / qc.d));
    let disc = ib * ib - 4 * ia * ic;
    let s = isqrt(disc)?;
    let mut roots = vec![Q::new(-ib - s, 2 * ia), Q::new(-ib + s, 2 * ia)];
    roots.sort();
    roots.dedup();
    Some(roots)
}

pub fn apply(m: [Q; 4], x: Q) -> Q {
    let [a, b, c, d] = m;
    a.mul(x).add(b).div(c.mul(x).add(d))
}

pub fn multiplier(m: [Q; 4], xi: Q) -> Q {
    let [a, b, c, d] = m;
    let det = a.mul(d).sub(b.mul(c));
    let den = c.mul(xi).add(d);
    det.div(den.mul(den))
}

/// "attractive" / "repelling" / "indifferent" at `p`, or at ∞ for `p = 0`.
pub fn kind(mult: Q, p: i128) -> &'static str {
    let norm = if p == 0 { mult.abs() } else { mult.pnorm(p) };
    match norm.cmp(&Q::int(1)) {
        Ordering::Less => "attractive",
        Ordering::Greater => "repelling",
        Ordering::Equal => "indifferent",
    }
}
