//! Process-wide tally of solver witnesses. Every solver re-verifies its
//! candidate by substitution and records the outcome here before returning it;
//! a candidate that fails is never returned.

use std::sync::atomic::{AtomicUsize, Ordering};

static EMITTED: AtomicUsize = AtomicUsize::new(0);
static UNVERIFIED: AtomicUsize = AtomicUsize::new(0);

/// Record one candidate witness and whether it verified.
pub fn record(verified: bool) -> bool {
    EMITTED.fetch_add(1, Ordering::SeqCst);
    if !verified {
        UNVERIFIED.fetch_add(1, Ordering::SeqCst);
    }
    verified
}

/// `(emitted, failed re-verification)`.
pub fn tally() -> (usize, usize) {
    (
        EMITTED.load(Ordering::SeqCst),
        UNVERIFIED.load(Ordering::SeqCst),
    )
}
