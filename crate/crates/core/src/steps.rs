use std::ops::AddAssign;

/// Work counters for the instrumented (`*_counted`) operations.
///
/// Each field counts one kind of elementary step: a `Bin` node visited while
/// focusing, a call to `append` (recursive calls included), one fold step of
/// `grow`, and a `Bin` node taken apart by `trim`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Steps {
    pub descents: u64,
    pub appends: u64,
    pub grows: u64,
    pub trims: u64,
}

impl Steps {
    pub fn total(&self) -> u64 {
        self.descents + self.appends + self.grows + self.trims
    }
}

impl AddAssign for Steps {
    fn add_assign(&mut self, rhs: Steps) {
        self.descents += rhs.descents;
        self.appends += rhs.appends;
        self.grows += rhs.grows;
        self.trims += rhs.trims;
    }
}
