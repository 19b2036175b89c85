//! Integer linear forms in the formal parameters `t1, t2, ...`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Maximum number of formal `t` variables.
pub const MAX_T: usize = 8;

/// An integer linear combination of `t1..t{MAX_T}`. Index 0 is `t1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TForm(pub [i32; MAX_T]);

impl TForm {
    pub const ZERO: TForm = TForm([0; MAX_T]);

    /// The variable `t{i+1}`.
    pub fn var(i: usize) -> Self {
        assert!(i < MAX_T, "t-variable index {i} out of range");
        let mut c = [0; MAX_T];
        c[i] = 1;
        TForm(c)
    }

    /// `t1, ..., td` as forms.
    pub fn identity(d: usize) -> Vec<TForm> {
        (0..d).map(TForm::var).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coeff(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn scale(&self, k: i32) -> Self {
        let mut c = self.0;
        for v in c.iter_mut() {
            *v *= k;
        }
        TForm(c)
    }
}

impl Add for TForm {
    type Output = TForm;
    fn add(self, rhs: TForm) -> TForm {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0) {
            *a += b;
        }
        TForm(c)
    }
}

impl Sub for TForm {
    type Output = TForm;
    fn sub(self, rhs: TForm) -> TForm {
        self + (-rhs)
    }
}

impl Neg for TForm {
    type Output = TForm;
    fn neg(self) -> TForm {
        self.scale(-1)
    }
}

impl fmt::Debug for TForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}t{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}*t{}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
