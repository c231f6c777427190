//! The gain φ(x) = √(C² + 2Cx) − C and the refined nonlinear inequality
//! 𝓖[v] ≤ S J^{1+2s/n} φ(J^{2s/n−1}𝓕[u]), v = u^r.

use crate::error::{Error, Result};
use crate::functionals::Functionals;
use crate::report::Record;
use crate::sphere::ZonalFunction;

/// φ(x) = √(C² + 2Cx) − C, written as 2Cx/(√(C² + 2Cx) + C) so that small
/// x keeps full relative accuracy.
pub fn phi(x: f64, c: f64) -> f64 {
    2.0 * c * x / ((c * c + 2.0 * c * x).sqrt() + c)
}

/// φ for a fixed C ∈ (0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiGain {
    c: f64,
}

impl PhiGain {
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::Domain(format!("C must lie in (0, 1], got {c}")));
        }
        Ok(Self { c })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn eval(&self, x: f64) -> f64 {
        phi(x, self.c)
    }

    /// φ(x) ≤ Cx exactly when x ≥ 2(1 − C)/C.
    pub fn crossover(&self) -> f64 {
        2.0 * (1.0 - self.c) / self.c
    }
}

/// Both sides of the refined inequality for one u.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearCheck {
    pub c: f64,
    /// J = ∫u^q.
    pub j: f64,
    pub f_value: f64,
    pub g_value: f64,
    /// J^{2s/n−1}𝓕[u].
    pub argument: f64,
    /// S J^{1+2s/n} φ(argument).
    pub bound: f64,
    /// bound − 𝓖[v].
    pub margin: f64,
    /// S J^{1+2s/n} = S‖v‖_p².
    pub scale: f64,
}

impl NonlinearCheck {
    pub fn relative_margin(&self) -> f64 {
        self.margin / self.scale
    }

    pub fn to_record(&self) -> Record {
        Record::new()
            .with("C", self.c)
            .with("J", self.j)
            .with("F_u", self.f_value)
            .with("G_v", self.g_value)
            .with("argument", self.argument)
            .with("bound", self.bound)
            .with("margin", self.margin)
            .with("scale", self.scale)
    }
}

/// Margin S J^{1+2s/n} φ(J^{2s/n−1}𝓕[u]) − 𝓖[u^r] for the q-lift `f` of u.
pub fn verify_improved_nonlinear(fx: &Functionals, f: &ZonalFunction, c: f64) -> Result<NonlinearCheck> {
    let gain = PhiGain::new(c)?;
    let p = fx.params();
    let rep = fx.deficit_report(f)?;
    let j = rep.lq_norm.powf(p.q());
    let exponent = 2.0 * p.s() / p.nf();
    let argument = j.powf(exponent - 1.0) * rep.f_value;
    let scale = fx.sobolev() * j.powf(1.0 + exponent);
    let bound = scale * gain.eval(argument);
    Ok(NonlinearCheck {
        c,
        j,
        f_value: rep.f_value,
        g_value: rep.g_value,
        argument,
        bound,
        margin: bound - rep.g_value,
        scale,
    })
}
