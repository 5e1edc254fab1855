"""Compactly supported frequency kernels on R^N.

A :class:`KernelSpec` couples an evaluation rule with a declared compact
support box; evaluation returns exactly 0 outside the box.  Built-in
closed forms:

* ``tent_b`` — the plateau tent: per axis 1 on [1/4,3/4], linear down to
  0 at the endpoints of [0,1], zero outside; values in [0,1].
* ``triangle`` — per axis max(1-|ξ|, 0); the product over axes sums to 1
  over integer translates (partition of unity).
* ``indicator`` — the half-open box indicator χ_[a,b).
* ``affine`` — base(S·ξ + c) for a scale matrix S (or per-axis scales)
  and shift c.
* ``table`` — nearest-sample lookup on a uniform grid; queries must be
  grid-aligned (this is a sampled symbol, not an interpolant).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "KernelSpec",
    "tent_b",
    "triangle_kernel",
    "tent_kernel",
    "triangle_kernel_spec",
    "indicator_kernel",
    "affine_image",
    "linear_image",
    "table_kernel",
    "translate_kernel",
    "kernel_to_json",
    "kernel_from_json",
    "save_kernel",
    "load_kernel",
]

_ALIGN_RTOL = 1e-9


def tent_b(xi) -> np.ndarray:
    """Plateau tent b(ξ) = ∏ b_i(ξ_i): 1 on [1/4,3/4], linear ramps on
    [0,1/4] and [3/4,1], zero elsewhere."""
    xi = np.asarray(xi, dtype=float)
    ramp_up = np.clip(4.0 * xi, 0.0, 1.0)
    ramp_down = np.clip(4.0 * (1.0 - xi), 0.0, 1.0)
    inside = (xi >= 0.0) & (xi <= 1.0)
    per_axis = np.where(inside, np.minimum(ramp_up, ramp_down), 0.0)
    return np.prod(per_axis, axis=-1)


def triangle_kernel(xi) -> np.ndarray:
    """Triangle kernel ∏ max(1-|ξ_i|, 0), supported on [-1,1]^N."""
    xi = np.asarray(xi, dtype=float)
    return np.prod(np.maximum(1.0 - np.abs(xi), 0.0), axis=-1)


@dataclass(frozen=True)
class KernelSpec:
    dim: int
    form: str
    support_box: np.ndarray = field(repr=True)  # (dim, 2) closed bounds
    params: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        box = np.asarray(self.support_box, dtype=float).reshape(self.dim, 2)
        if not np.all(np.isfinite(box)):
            raise ValueError("support_box must be compact (finite bounds)")
        if np.any(box[:, 1] < box[:, 0]):
            raise ValueError("support_box bounds out of order")
        box = np.ascontiguousarray(box)
        box.setflags(write=False)
        object.__setattr__(self, "support_box", box)

    def evaluate(self, xi) -> np.ndarray:
        """Evaluate at points of shape ``(..., dim)``; exactly 0 outside the box."""
        xi = np.asarray(xi, dtype=float)
        scalar = xi.ndim == 1
        pts = xi.reshape(-1, self.dim)
        lo = self.support_box[:, 0]
        hi = self.support_box[:, 1]
        inside = np.all((pts >= lo) & (pts <= hi), axis=1)
        out = np.zeros(pts.shape[0], dtype=self._dtype())
        if np.any(inside):
            out[inside] = self._evaluate_inside(pts[inside])
        if scalar:
            return out[0]
        return out.reshape(xi.shape[:-1])

    def _dtype(self):
        if self.form == "table":
            return complex
        if self.form == "affine":
            return self.params["base"]._dtype()
        return float

    def _evaluate_inside(self, pts: np.ndarray) -> np.ndarray:
        if self.form == "tent_b":
            return tent_b(pts)
        if self.form == "triangle":
            return triangle_kernel(pts)
        if self.form == "indicator":
            box = self.params["box"]
            ok = np.all((pts >= box[:, 0]) & (pts < box[:, 1]), axis=1)
            return ok.astype(float)
        if self.form == "affine":
            mapped = pts @ self.params["scale"].T + self.params["shift"]
            return self.params["base"].evaluate(mapped)
        if self.form == "table":
            return self._table_lookup(pts)
        raise ValueError(f"unknown kernel form {self.form!r}")

    def _table_lookup(self, pts: np.ndarray) -> np.ndarray:
        start = self.params["start"]
        step = self.params["step"]
        values = self.params["values"]
        rel = (pts - start) / step
        idx = np.rint(rel).astype(int)
        off = np.max(np.abs(rel - idx))
        if off > _ALIGN_RTOL:
            raise ValueError(
                f"table kernel queried {off:.3e} steps off its sample grid; "
                "tables are grid-aligned by contract"
            )
        shape = np.array(values.shape)
        out = np.zeros(pts.shape[0], dtype=complex)
        ok = np.all((idx >= 0) & (idx < shape), axis=1)
        if np.any(ok):
            out[ok] = values[tuple(idx[ok].T)]
        return out


def tent_kernel(dim: int) -> KernelSpec:
    box = np.array([[0.0, 1.0]] * dim)
    return KernelSpec(dim=dim, form="tent_b", support_box=box)


def triangle_kernel_spec(dim: int) -> KernelSpec:
    box = np.array([[-1.0, 1.0]] * dim)
    return KernelSpec(dim=dim, form="triangle", support_box=box)


def indicator_kernel(box) -> KernelSpec:
    """Indicator of the half-open box ∏ [a_i, b_i)."""
    box = np.asarray(box, dtype=float).reshape(-1, 2)
    return KernelSpec(
        dim=box.shape[0], form="indicator", support_box=box.copy(), params={"box": box}
    )


def affine_image(base: KernelSpec, scale, shift) -> KernelSpec:
    """Kernel ξ ↦ base(S ξ + c); S a matrix or per-axis scale vector."""
    dim = base.dim
    scale = np.asarray(scale, dtype=float)
    if scale.ndim <= 1:
        scale = np.diag(np.broadcast_to(scale, (dim,)).astype(float))
    shift = np.broadcast_to(np.asarray(shift, dtype=float), (dim,)).astype(float)
    if abs(np.linalg.det(scale)) < 1e-300:
        raise ValueError("affine scale must be invertible to keep support compact")
    inv = np.linalg.inv(scale)
    # bounding box of S^{-1}(base support - shift) via corner images
    corners = np.stack(
        np.meshgrid(*[base.support_box[i] for i in range(dim)], indexing="ij"), axis=-1
    ).reshape(-1, dim)
    pre = (corners - shift) @ inv.T
    box = np.stack([pre.min(axis=0), pre.max(axis=0)], axis=1)
    return KernelSpec(
        dim=dim,
        form="affine",
        support_box=box,
        params={"base": base, "scale": scale, "shift": shift},
    )


def linear_image(base: KernelSpec, matrix) -> KernelSpec:
    """Kernel ξ ↦ base(B ξ)."""
    return affine_image(base, np.asarray(matrix, dtype=float), np.zeros(base.dim))


def table_kernel(start, step, values, support_box=None) -> KernelSpec:
    """Sampled kernel on the uniform grid ``start + step*k`` (row-major values)."""
    values = np.asarray(values, dtype=complex)
    dim = values.ndim
    start = np.broadcast_to(np.asarray(start, dtype=float), (dim,)).astype(float)
    step = np.broadcast_to(np.asarray(step, dtype=float), (dim,)).astype(float)
    if np.any(step <= 0):
        raise ValueError("table step must be positive")
    if support_box is None:
        hi = start + step * (np.array(values.shape) - 1)
        support_box = np.stack([start, hi], axis=1)
    return KernelSpec(
        dim=dim,
        form="table",
        support_box=np.asarray(support_box, dtype=float),
        params={"start": start, "step": step, "values": values},
    )


def translate_kernel(base: KernelSpec, c) -> KernelSpec:
    """Shifted kernel Λ(· - c); the support box moves by c.

    For c on a model's frequency grid the multiplier with symbol Λ(·-c)
    has the same output magnitudes as the Λ-multiplier applied to the
    modulated input e^{-2πi c·x} f (modulation covariance), so the two
    share every distribution function.
    """
    c = np.broadcast_to(np.asarray(c, dtype=float), (base.dim,))
    if not np.all(np.isfinite(c)):
        raise ValueError("shift must be finite")
    return affine_image(base, np.ones(base.dim), -c)


def _params_to_json(spec: KernelSpec) -> dict:
    if spec.form in ("tent_b", "triangle"):
        return {}
    if spec.form == "indicator":
        return {"box": spec.params["box"].tolist()}
    if spec.form == "affine":
        return {
            "base": kernel_to_json(spec.params["base"]),
            "scale": spec.params["scale"].tolist(),
            "shift": spec.params["shift"].tolist(),
        }
    if spec.form == "table":
        v = spec.params["values"].reshape(-1)
        return {
            "start": spec.params["start"].tolist(),
            "step": spec.params["step"].tolist(),
            "shape": list(spec.params["values"].shape),
            "re": v.real.tolist(),
            "im": v.imag.tolist(),
        }
    raise ValueError(f"unknown kernel form {spec.form!r}")


def kernel_to_json(spec: KernelSpec) -> dict:
    return {
        "type": spec.form,
        "params": _params_to_json(spec),
        "support": spec.support_box.tolist(),
    }


def kernel_from_json(obj: dict) -> KernelSpec:
    form = obj["type"]
    support = np.asarray(obj["support"], dtype=float)
    params = obj.get("params", {})
    if form in ("tent_b", "triangle"):
        return KernelSpec(dim=support.shape[0], form=form, support_box=support)
    if form == "indicator":
        box = np.asarray(params["box"], dtype=float)
        return KernelSpec(dim=box.shape[0], form=form, support_box=support, params={"box": box})
    if form == "affine":
        base = kernel_from_json(params["base"])
        return KernelSpec(
            dim=base.dim,
            form="affine",
            support_box=support,
            params={
                "base": base,
                "scale": np.asarray(params["scale"], dtype=float),
                "shift": np.asarray(params["shift"], dtype=float),
            },
        )
    if form == "table":
        shape = tuple(params["shape"])
        values = (
            np.asarray(params["re"], dtype=float) + 1j * np.asarray(params["im"], dtype=float)
        ).reshape(shape)
        return KernelSpec(
            dim=len(shape),
            form="table",
            support_box=support,
            params={
                "start": np.asarray(params["start"], dtype=float),
                "step": np.asarray(params["step"], dtype=float),
                "values": values,
            },
        )
    raise ValueError(f"unknown kernel type {form!r}")


def save_kernel(spec: KernelSpec, path) -> None:
    Path(path).write_text(json.dumps(kernel_to_json(spec), sort_keys=True))


def load_kernel(path) -> KernelSpec:
    return kernel_from_json(json.loads(Path(path).read_text()))
