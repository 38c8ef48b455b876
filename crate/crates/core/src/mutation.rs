//! Deliberate single-coefficient defects for checking that the law suite
//! actually detects broken parameter updates.
//!
//! Hooks are compiled in only with the `mutation-hooks` feature; without it
//! [`active`] is constantly `false`.

#[cfg(feature = "mutation-hooks")]
use std::cell::Cell;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// translate updates `b` with `c·k` instead of `2·c·k`.
    TranslateSlopeFactor,
    /// amp_mul never applies the sign flip of the branch rule.
    AmpMulNoFlip,
    /// convolve drops the 4 in `(b0 - b1)^2 / (4 (c0 + c1))`.
    ConvolveOffsetQuarter,
    /// fourier_analysis uses `+i b / c` for the new linear coefficient.
    FourierLinearSign,
}

impl Mutation {
    pub const ALL: [Mutation; 4] = [
        Mutation::TranslateSlopeFactor,
        Mutation::AmpMulNoFlip,
        Mutation::ConvolveOffsetQuarter,
        Mutation::FourierLinearSign,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::TranslateSlopeFactor => "translate-slope-factor",
            Mutation::AmpMulNoFlip => "amp-mul-no-flip",
            Mutation::ConvolveOffsetQuarter => "convolve-offset-quarter",
            Mutation::FourierLinearSign => "fourier-linear-sign",
        }
    }
}

#[cfg(feature = "mutation-hooks")]
thread_local! {
    static ACTIVE: Cell<Option<Mutation>> = const { Cell::new(None) };
}

/// Runs `f` with `m` switched on for the current thread.
#[cfg(feature = "mutation-hooks")]
pub fn with_mutation<R>(m: Mutation, f: impl FnOnce() -> R) -> R {
    struct Reset(Option<Mutation>);
    impl Drop for Reset {
        fn drop(&mut self) {
            ACTIVE.with(|a| a.set(self.0));
        }
    }
    let _reset = Reset(ACTIVE.with(|a| a.replace(Some(m))));
    f()
}

#[inline]
pub(crate) fn active(m: Mutation) -> bool {
    #[cfg(feature = "mutation-hooks")]
    {
        ACTIVE.with(|a| a.get() == Some(m))
    }
    #[cfg(not(feature = "mutation-hooks"))]
    {
        let _ = m;
        false
    }
}
