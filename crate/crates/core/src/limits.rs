//! Resource guards for Gröbner computations.
//!
//! Limits are installed per thread with [`Limits::scope`]; every Buchberger
//! run on that thread checks them and fails with [`Error::Resource`] instead
//! of running away.

use std::cell::RefCell;
use std::time::Instant;

use crate::error::{Error, Limit, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Limits {
    /// S-pairs processed by a single Gröbner basis computation.
    pub max_pairs: usize,
    /// Elements in a basis under construction.
    pub max_basis: usize,
    /// Bit length of any rational numerator or denominator.
    pub max_bits: u64,
    /// Largest total degree of a basis element.
    pub max_degree: u32,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pairs: 2_000_000,
            max_basis: 50_000,
            max_bits: 4096,
            max_degree: 400,
            deadline: None,
        }
    }
}

thread_local! {
    static CURRENT: RefCell<Limits> = RefCell::new(Limits::default());
}

impl Limits {
    pub fn current() -> Limits {
        CURRENT.with(|c| c.borrow().clone())
    }

    /// Runs `f` with these limits installed on the current thread.
    pub fn scope<T>(self, f: impl FnOnce() -> T) -> T {
        let prev = CURRENT.with(|c| std::mem::replace(&mut *c.borrow_mut(), self));
        struct Restore(Option<Limits>);
        impl Drop for Restore {
            fn drop(&mut self) {
                if let Some(l) = self.0.take() {
                    CURRENT.with(|c| *c.borrow_mut() = l);
                }
            }
        }
        let _guard = Restore(Some(prev));
        f()
    }

    pub(crate) fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Resource(Limit::Deadline)),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scope_restores_previous_limits() {
        let before = Limits::current();
        let inner = Limits {
            max_pairs: 7,
            ..Limits::default()
        }
        .scope(|| Limits::current().max_pairs);
        assert_eq!(inner, 7);
        assert_eq!(Limits::current(), before);
    }
}
