//! Opt-in counters recording which formula branch each recursion step took.
//!
//! Counting is off unless a [`record`] scope is active on the current thread.

use std::cell::RefCell;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    LsiPoint,
    LsiLine,
    LsiPositive,
    HciB,
    HciC,
    TriB,
    TriBr,
    TriC,
    TetB,
    TetC,
    PriB,
    PriC,
}

const N_BRANCHES: usize = 12;

impl Branch {
    pub const ALL: [Branch; N_BRANCHES] = [
        Branch::LsiPoint,
        Branch::LsiLine,
        Branch::LsiPositive,
        Branch::HciB,
        Branch::HciC,
        Branch::TriB,
        Branch::TriBr,
        Branch::TriC,
        Branch::TetB,
        Branch::TetC,
        Branch::PriB,
        Branch::PriC,
    ];
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BranchCounts([u64; N_BRANCHES]);

impl BranchCounts {
    pub fn get(&self, branch: Branch) -> u64 {
        self.0[branch as usize]
    }
}

thread_local! {
    static ACTIVE: RefCell<Option<BranchCounts>> = const { RefCell::new(None) };
}

#[inline]
pub(crate) fn hit(branch: Branch) {
    ACTIVE.with(|cell| {
        if let Some(counts) = cell.borrow_mut().as_mut() {
            counts.0[branch as usize] += 1;
        }
    });
}

/// Run `f` and return how many times each branch was entered while it ran.
pub fn record<R>(f: impl FnOnce() -> R) -> (R, BranchCounts) {
    let outer = ACTIVE.with(|cell| cell.borrow_mut().replace(BranchCounts::default()));
    let result = f();
    let counts = ACTIVE
        .with(|cell| cell.borrow_mut().take())
        .unwrap_or_default();
    if let Some(mut outer) = outer {
        for (acc, c) in outer.0.iter_mut().zip(counts.0) {
            *acc += c;
        }
        ACTIVE.with(|cell| *cell.borrow_mut() = Some(outer));
    }
    (result, counts)
}
