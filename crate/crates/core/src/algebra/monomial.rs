use std::cmp::Ordering;
use std::fmt;

/// `x^x eta^eta t^t dt^dt` with the odd exponents restricted to 0 or 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    pub x: u32,
    pub eta: bool,
    pub t: u32,
    pub dt: bool,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        x: 0,
        eta: false,
        t: 0,
        dt: false,
    };

    pub fn new(x: u32, eta: bool, t: u32, dt: bool) -> Self {
        Monomial { x, eta, t, dt }
    }

    pub fn x_pow(x: u32) -> Self {
        Monomial { x, ..Self::ONE }
    }

    pub fn degree(&self) -> i32 {
        self.dt as i32 - self.eta as i32
    }

    pub fn is_odd(&self) -> bool {
        self.eta ^ self.dt
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// Product in canonical factor order. Returns `None` when an odd
    /// generator would be squared, otherwise the monomial and whether the
    /// Koszul sign is negative.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if (self.eta && other.eta) || (self.dt && other.dt) {
            return None;
        }
        // moving other's eta to the left across self's dt
        let negative = other.eta && self.dt;
        Some((
            Monomial {
                x: self.x + other.x,
                eta: self.eta || other.eta,
                t: self.t + other.t,
                dt: self.dt || other.dt,
            },
            negative,
        ))
    }

    fn key(&self) -> (i32, u32, u32, bool, bool) {
        (self.degree(), self.x, self.t, self.eta, self.dt)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        match self.x {
            0 => {}
            1 => factors.push("x".to_string()),
            n => factors.push(format!("x^{n}")),
        }
        if self.eta {
            factors.push("eta".to_string());
        }
        match self.t {
            0 => {}
            1 => factors.push("t".to_string()),
            n => factors.push(format!("t^{n}")),
        }
        if self.dt {
            factors.push("dt".to_string());
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}
