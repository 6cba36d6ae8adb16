//! Edge-to-edge tilings of the plane by unit triangles and shields.

pub mod angle;
pub mod atlas;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod generators;
mod geom;
pub mod patch;
pub mod render;
pub mod root;

pub use geom::Xy;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub mod intro {}
    #[doc = include_str!("../../../book/src/angles.md")]
    pub mod angles {}
    #[doc = include_str!("../../../book/src/atlas.md")]
    pub mod atlas {}
    #[doc = include_str!("../../../book/src/patches.md")]
    pub mod patches {}
    #[doc = include_str!("../../../book/src/families.md")]
    pub mod families {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    pub mod enumeration {}
    #[doc = include_str!("../../../book/src/rendering.md")]
    pub mod rendering {}
}
