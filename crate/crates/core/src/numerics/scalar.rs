//! Real scalar abstraction shared by the double-precision and the
//! multi-precision code paths.
//!
//! Every dense kernel in [`crate::numerics`] is written against [`Real`], so
//! the same exponential, eigen-solver and Jacobi sweep run on `f64` and on
//! [`Mp`] (MPFR floats at a thread-local working precision).

use std::cell::Cell;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};
use rug::Float;

/// Complex number over a [`Real`].
pub type Cx<T> = Complex<T>;

pub trait Real: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn from_rational(q: &BigRational) -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn abs(&self) -> Self;
    fn hypot(&self, other: &Self) -> Self;
    /// Unit roundoff of the current working precision.
    fn epsilon() -> f64;

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn hypot(&self, other: &Self) -> Self {
        f64::hypot(*self, *other)
    }
    fn epsilon() -> f64 {
        f64::EPSILON / 2.0
    }
}

thread_local! {
    static MP_PREC: Cell<u32> = const { Cell::new(256) };
}

/// Current multi-precision working precision in bits.
pub fn mp_precision() -> u32 {
    MP_PREC.with(|p| p.get())
}

/// Run `f` with the thread-local MPFR precision set to `bits`.
pub fn with_mp_precision<R>(bits: u32, f: impl FnOnce() -> R) -> R {
    let old = MP_PREC.with(|p| p.replace(bits.max(64)));
    let out = f();
    MP_PREC.with(|p| p.set(old));
    out
}

/// MPFR float whose precision is fixed when the value is created.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Mp(pub Float);

impl Mp {
    fn new(v: impl Into<f64>) -> Mp {
        Mp(Float::with_val(mp_precision(), v.into()))
    }

    fn from_bigint(z: &BigInt) -> Mp {
        let s = z.to_str_radix(16);
        let parsed = Float::parse_radix(s, 16).expect("hex integer parses");
        Mp(Float::with_val(mp_precision(), parsed))
    }
}

macro_rules! mp_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for Mp {
            type Output = Mp;
            fn $f(self, rhs: Mp) -> Mp {
                Mp($tr::$f(self.0, rhs.0))
            }
        }
    };
}
mp_binop!(Add, add);
mp_binop!(Sub, sub);
mp_binop!(Mul, mul);
mp_binop!(Div, div);
mp_binop!(Rem, rem);

impl Neg for Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(-self.0)
    }
}

impl Zero for Mp {
    fn zero() -> Mp {
        Mp::new(0.0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Mp {
    fn one() -> Mp {
        Mp::new(1.0)
    }
}

impl Num for Mp {
    type FromStrRadixErr = rug::float::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Mp, Self::FromStrRadixErr> {
        let parsed = Float::parse_radix(s, radix as i32)?;
        Ok(Mp(Float::with_val(mp_precision(), parsed)))
    }
}

impl Real for Mp {
    fn from_f64(x: f64) -> Self {
        Mp::new(x)
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn from_rational(q: &BigRational) -> Self {
        Mp::from_bigint(q.numer()) / Mp::from_bigint(q.denom())
    }
    fn sqrt(&self) -> Self {
        Mp(self.0.clone().sqrt())
    }
    fn exp(&self) -> Self {
        Mp(self.0.clone().exp())
    }
    fn ln(&self) -> Self {
        Mp(self.0.clone().ln())
    }
    fn sin(&self) -> Self {
        Mp(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        Mp(self.0.clone().cos())
    }
    fn atan2(&self, x: &Self) -> Self {
        Mp(self.0.clone().atan2(&x.0))
    }
    fn abs(&self) -> Self {
        Mp(self.0.clone().abs())
    }
    fn hypot(&self, other: &Self) -> Self {
        Mp(self.0.clone().hypot(&other.0))
    }
    fn epsilon() -> f64 {
        2f64.powi(-(mp_precision() as i32))
    }
}

/// Modulus of a complex number without overflow in the intermediate square.
pub fn cabs<T: Real>(z: &Cx<T>) -> T {
    z.re.hypot(&z.im)
}

pub fn cx<T: Real>(re: f64, im: f64) -> Cx<T> {
    Complex::new(T::from_f64(re), T::from_f64(im))
}

pub fn cx_from64<T: Real>(z: Complex<f64>) -> Cx<T> {
    cx(z.re, z.im)
}

pub fn cx_to64<T: Real>(z: &Cx<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

/// `exp(i·phi)`.
pub fn cis<T: Real>(phi: &T) -> Cx<T> {
    Complex::new(phi.cos(), phi.sin())
}
