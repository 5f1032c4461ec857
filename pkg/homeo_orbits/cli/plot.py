from fractions import Fraction

import numpy as np

from homeo_orbits.action.system import GeneratorSystem
from homeo_orbits.cli.constants import (
	DESIGNATED_MARKER_SIZE,
	GRAPH_SAMPLES,
	MARKER_RADIUS,
	PLOT_PREC,
	SVG_SIZE,
)
from homeo_orbits.cli.orbit_csv import OrbitRow
from homeo_orbits.exceptions import HomeoOrbitsError
from homeo_orbits.homeo.constants import DomainKind
from homeo_orbits.homeo.maps import PiecewiseMap, eval_map

NS_SVG = "http://www.w3.org/2000/svg"

# one stroke colour per generator, cycled
PALETTE = ("#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#117a65")


def demangle(k: str) -> str:
	return k.rstrip("_").replace("_", "-")


def rounder(x):
	if isinstance(x, float):
		return f"{x:.3f}".rstrip("0").rstrip(".")
	return x


def props_repr(d: dict) -> str:
	return " ".join(f'{demangle(k)}="{rounder(v)}"' for k, v in d.items())


def element(tag: str, inner: str | None = None, **attr) -> str:
	props = props_repr(attr)
	pre = " " if props else ""
	if inner is None:
		return f"<{tag}{pre}{props} />"
	return f"<{tag}{pre}{props}>{inner}</{tag}>"


class Frame:
	"""Affine map of the system's window onto the SVG square, y pointing up."""

	def __init__(self, lo: Fraction, hi: Fraction, size: int = SVG_SIZE):
		self.lo = float(lo)
		self.hi = float(hi)
		self.size = size

	def px(self, x: np.ndarray | float) -> np.ndarray | float:
		return (x - self.lo) / (self.hi - self.lo) * self.size

	def py(self, y: np.ndarray | float) -> np.ndarray | float:
		return self.size - self.px(y)

	def inside(self, x: float) -> bool:
		return self.lo <= x <= self.hi


def sample_graph(
	m: PiecewiseMap, lo: Fraction, hi: Fraction, samples: int = GRAPH_SAMPLES
) -> tuple[np.ndarray, np.ndarray]:
	"""Grid of the window and the values of m there; NaN where m cannot be evaluated."""
	grid = [lo + (hi - lo) * Fraction(k, samples - 1) for k in range(samples)]
	values = []
	for x in grid:
		try:
			values.append(float(eval_map(m, x, PLOT_PREC).mid()))
		except HomeoOrbitsError:
			values.append(np.nan)
	return np.array([float(x) for x in grid]), np.array(values)


def graph_segments(xs: np.ndarray, ys: np.ndarray, wraps: bool) -> list[tuple[np.ndarray, np.ndarray]]:
	"""Split the sampled graph at undefined values and, for circle maps, where it wraps past 1."""
	breaks = np.isnan(ys)
	cuts = np.flatnonzero(breaks[1:] | breaks[:-1])
	if wraps:
		cuts = np.union1d(cuts, np.flatnonzero(np.diff(ys) < 0))
	segments = []
	for part in np.split(np.arange(xs.size), cuts + 1):
		part = part[~breaks[part]]
		if part.size >= 2:
			segments.append((xs[part], ys[part]))
	return segments


def _polyline(frame: Frame, xs: np.ndarray, ys: np.ndarray, **attr) -> str:
	coords = zip(frame.px(xs), frame.py(ys), strict=True)
	points = " ".join(f"{rounder(float(x))},{rounder(float(y))}" for x, y in coords)
	return element("polyline", points=points, fill="none", **attr)


def _axes(frame: Frame) -> list[str]:
	size = frame.size
	parts = [element("rect", x=0, y=0, width=size, height=size, fill="none", stroke="black", stroke_width=1)]
	# x and y axes through 0 when the window reaches past it
	zero_x, zero_y = frame.px(0.0), frame.py(0.0)
	if 0 < zero_x < size:
		parts.append(element("line", x1=zero_x, y1=0, x2=zero_x, y2=size, stroke="black", stroke_width=1))
	if 0 < zero_y < size:
		parts.append(element("line", x1=0, y1=zero_y, x2=size, y2=zero_y, stroke="black", stroke_width=1))
	parts.append(
		element(
			"line", x1=0, y1=size, x2=size, y2=0, stroke="#999999", stroke_width=1, stroke_dasharray="4 4"
		)
	)
	return parts


def _markers(frame: Frame, system: GeneratorSystem, rows: list[OrbitRow]) -> list[str]:
	designated = {float(p): name for name, p in system.designated_points.items()}
	base = frame.size - MARKER_RADIUS
	parts = []
	for row in rows:
		x = float(row.value)
		if not frame.inside(x):
			continue
		name = designated.get(x)
		if name is None:
			parts.append(element("circle", cx=frame.px(x), cy=base, r=MARKER_RADIUS, fill="black", class_="orbit"))
		else:
			half = DESIGNATED_MARKER_SIZE / 2
			parts.append(
				element(
					"rect",
					x=frame.px(x) - half,
					y=frame.size - DESIGNATED_MARKER_SIZE,
					width=DESIGNATED_MARKER_SIZE,
					height=DESIGNATED_MARKER_SIZE,
					fill="#c0392b",
					class_="designated",
					data_name=name,
				)
			)
	return parts


def render_svg(system: GeneratorSystem, rows: list[OrbitRow]) -> str:
	"""Generator graphs over the system's window, with the orbit rows marked on the horizontal axis.

	Orbit points that are designated points of the system get a square marker.
	"""
	lo, hi = system.window()
	frame = Frame(lo, hi)
	parts = _axes(frame)
	for index, (name, m) in enumerate(system.generators.items()):
		xs, ys = sample_graph(m, lo, hi)
		colour = PALETTE[index % len(PALETTE)]
		for seg_x, seg_y in graph_segments(xs, ys, m.domain_kind is DomainKind.CIRCLE):
			parts.append(
				_polyline(frame, seg_x, seg_y, stroke=colour, stroke_width=1, class_="graph", data_name=name)
			)
	parts.extend(_markers(frame, system, rows))

	inside = "\n".join(parts)
	return element(
		"svg",
		f"\n{inside}\n",
		width=frame.size,
		height=frame.size,
		viewBox=f"0 0 {frame.size} {frame.size}",
		xmlns=NS_SVG,
	)


def write_svg(system: GeneratorSystem, rows: list[OrbitRow], path: str) -> None:
	with open(path, "w", encoding="utf-8") as f:
		f.write(render_svg(system, rows) + "\n")
