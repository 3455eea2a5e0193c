use crate::model::Color;

/// A set of palette indices packed into one word.
pub type ColorMask = u128;

/// Largest number of distinct colors a [`Palette`] can index.
pub const PALETTE_CAPACITY: usize = 128;

/// Iterates the set bits of a mask, lowest first.
pub(crate) fn bits(mut m: ColorMask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Dense renumbering of a finite set of colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    colors: Vec<Color>,
}

impl Palette {
    /// Builds the palette of all colors in `lists`. `None` if there are more than
    /// [`PALETTE_CAPACITY`] of them.
    pub fn from_lists<'a>(lists: impl IntoIterator<Item = &'a [Color]>) -> Option<Self> {
        let mut colors: Vec<Color> = lists.into_iter().flatten().copied().collect();
        colors.sort_unstable();
        colors.dedup();
        (colors.len() <= PALETTE_CAPACITY).then_some(Self { colors })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn index_of(&self, c: Color) -> Option<usize> {
        self.colors.binary_search(&c).ok()
    }

    /// Mask of `list`, or `None` when some color is outside the palette.
    pub fn mask_of(&self, list: &[Color]) -> Option<ColorMask> {
        list.iter().try_fold(0, |m, &c| self.index_of(c).map(|i| m | 1 << i))
    }

    pub fn colors_of(&self, mask: ColorMask) -> Vec<Color> {
        bits(mask).map(|i| self.colors[i]).collect()
    }

    pub fn color(&self, i: usize) -> Color {
        self.colors[i]
    }
}
