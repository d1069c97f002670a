use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitOrAssign, Sub};

/// Largest supported universe: one machine word per set.
pub const MAX_UNIVERSE: u32 = 64;

/// Element labels are 1-based.
pub type Element = u32;

/// A subset of `[m]`, element `e` stored at bit `e - 1`.
///
/// `Ord` is the canonical family order: by cardinality, then by the numeric
/// value of the word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SetMask(u64);

impl SetMask {
    pub const EMPTY: SetMask = SetMask(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        SetMask(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `[m]`. Panics if `m > 64`.
    #[inline]
    pub fn full(m: u32) -> Self {
        assert!(m <= MAX_UNIVERSE);
        if m == 64 {
            SetMask(u64::MAX)
        } else {
            SetMask((1u64 << m) - 1)
        }
    }

    #[inline]
    pub fn singleton(e: Element) -> Self {
        debug_assert!((1..=MAX_UNIVERSE).contains(&e));
        SetMask(1u64 << (e - 1))
    }

    /// Panics on an element outside `1..=64`.
    pub fn from_elements<I: IntoIterator<Item = Element>>(elements: I) -> Self {
        let mut bits = 0u64;
        for e in elements {
            assert!((1..=MAX_UNIVERSE).contains(&e), "element {e} out of range");
            bits |= 1u64 << (e - 1);
        }
        SetMask(bits)
    }

    #[inline]
    pub fn contains(self, e: Element) -> bool {
        (1..=MAX_UNIVERSE).contains(&e) && self.0 >> (e - 1) & 1 == 1
    }

    #[inline]
    pub fn with(self, e: Element) -> Self {
        SetMask(self.0 | 1u64 << (e - 1))
    }

    #[inline]
    pub fn without(self, e: Element) -> Self {
        SetMask(self.0 & !(1u64 << (e - 1)))
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: SetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when every set bit lies in `1..=m`.
    #[inline]
    pub fn fits(self, m: u32) -> bool {
        self.is_subset(SetMask::full(m.min(MAX_UNIVERSE)))
    }

    /// Largest element, or `None` for the empty set.
    pub fn max_element(self) -> Option<Element> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// Renames every element `e` to `map(e)`.
    pub fn map_elements(self, mut map: impl FnMut(Element) -> Element) -> SetMask {
        SetMask::from_elements(self.elements().map(&mut map))
    }
}

/// Ascending iterator over the elements of a [`SetMask`].
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = Element;

    #[inline]
    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl Ord for SetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl PartialOrd for SetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for SetMask {
    type Output = SetMask;
    #[inline]
    fn bitor(self, rhs: SetMask) -> SetMask {
        SetMask(self.0 | rhs.0)
    }
}

impl BitOrAssign for SetMask {
    #[inline]
    fn bitor_assign(&mut self, rhs: SetMask) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for SetMask {
    type Output = SetMask;
    #[inline]
    fn bitand(self, rhs: SetMask) -> SetMask {
        SetMask(self.0 & rhs.0)
    }
}

impl Sub for SetMask {
    type Output = SetMask;
    #[inline]
    fn sub(self, rhs: SetMask) -> SetMask {
        SetMask(self.0 & !rhs.0)
    }
}

impl FromIterator<Element> for SetMask {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        SetMask::from_elements(iter)
    }
}

/// Abbreviated notation: `{}` for the empty set, otherwise `{1,2,5}`.
impl fmt::Display for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
