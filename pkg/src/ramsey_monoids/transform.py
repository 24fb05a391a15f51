"""Self-maps of a finite set ``{0, ..., n-1}``."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Transformation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        n = len(images)
        for x, v in enumerate(images):
            if not 0 <= v < n:
                raise ValueError(f"image {v} of point {x} is outside 0..{n - 1}")
        object.__setattr__(self, "images", images)

    @property
    def domain_size(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __iter__(self):
        return iter(self.images)

    def __len__(self):
        return len(self.images)

    def __repr__(self):
        return f"Transformation({list(self.images)})"

    def after(self, other: Transformation) -> Transformation:
        """``self ∘ other``: apply ``other`` first."""
        return compose(self, other)

    def then(self, other: Transformation) -> Transformation:
        """``other ∘ self``: apply ``self`` first."""
        return compose(other, self)

    def image_set(self) -> frozenset[int]:
        return frozenset(self.images)


def compose(f: Transformation, g: Transformation) -> Transformation:
    """Return ``f ∘ g``, i.e. ``x -> f(g(x))``."""
    if f.domain_size != g.domain_size:
        raise ValueError("domain sizes differ")
    fi = f.images
    return Transformation(tuple(fi[y] for y in g.images))


def identity_map(n: int) -> Transformation:
    return Transformation(tuple(range(n)))


def constant_map(n: int, value: int) -> Transformation:
    return Transformation((value,) * n)
