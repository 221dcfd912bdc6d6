"""Rolling flash/no-flash fusion.

Both schemes roll a guided filter of the no-flash image steered by the
flash image. The additive variant re-injects a fixed detail layer of the
flash image each pass; the anchored variant is a conservative roll toward
an enhanced flash image and subsumes the additive one in the small-weight
limit. The detail and enhanced images depend only on the flash input and
are computed once per call.
"""

from __future__ import annotations

from .core import Image, WindowSpec, as_image, require_same_shape
from .gf import gf
from .cgf import cgf_roll


def detail_image(flash: Image, w: WindowSpec, eps: float) -> Image:
    """High-frequency layer of the flash image: flash - gf(flash, flash)."""
    flash = as_image(flash)
    return flash - gf(flash, flash, w, eps)


def rfnf_seo(
    noflash: Image, flash: Image, w: WindowSpec, eps: float, lam: float, iters: int
) -> Image:
    """Additive scheme: q <- gf(q, flash) + lam * detail, from q0 = noflash."""
    if iters < 1:
        raise ValueError(f"iters must be >= 1, got {iters}")
    noflash = as_image(noflash)
    flash = as_image(flash)
    require_same_shape(noflash, flash)
    detail = lam * detail_image(flash, w, eps)
    q = noflash
    for _ in range(iters):
        q = gf(q, flash, w, eps) + detail
    return q


def enhanced_flash(flash: Image, w: WindowSpec, eps: float, tau: float) -> Image:
    """Base layer of the flash image with its detail re-amplified by tau."""
    flash = as_image(flash)
    base = gf(flash, flash, w, eps)
    return base + tau * (flash - base)


def rfnf_gen(
    noflash: Image,
    flash: Image,
    w: WindowSpec,
    eps: float,
    lam: float,
    tau: float,
    iters: int,
) -> Image:
    """Anchored scheme: conservative roll of the no-flash image, guided by
    the flash image and anchored to its enhanced version."""
    noflash = as_image(noflash)
    flash = as_image(flash)
    require_same_shape(noflash, flash)
    anchor = enhanced_flash(flash, w, eps, tau)
    return cgf_roll(noflash, flash, anchor, w, eps, lam, iters)[-1]
