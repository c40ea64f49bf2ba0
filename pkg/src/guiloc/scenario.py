"""Typed bug-reproduction scenarios parsed from recorded GUI metadata.

A scenario directory holds one uiautomator hierarchy dump plus one
activity/window record per step, and a single action log:

    step_1.xml    uiautomator dump of the screen at step 1
    step_1.meta   two lines: activity name, window name or "-"
    ...
    actions.log   one line per step: "<i> <action> <resource_id|->"

The final step is the buggy screen. Actions are tap, long_touch, swipe,
type_text, or back; back actions never carry a resource id.
"""

from __future__ import annotations

import enum
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path


class ScenarioError(Exception):
    """Raised when a recorded scenario cannot be parsed."""


class Action(str, enum.Enum):
    TAP = "tap"
    LONG_TOUCH = "long_touch"
    SWIPE = "swipe"
    TYPE_TEXT = "type_text"
    BACK = "back"


class GuiInfoType(str, enum.Enum):
    """The five GUI information types used to derive GUI-related files."""

    GS = "GS"  # GUI Screens (activity/window names)
    EGC = "EGC"  # Exercised GUI Components
    GS_EGC = "GS_EGC"  # union of GS and EGC
    SC = "SC"  # all interactive Screen Components
    GS_SC = "GS_SC"  # union of GS and SC


@dataclass(frozen=True)
class ComponentMeta:
    resource_id: str | None
    class_name: str
    interactive: bool
    bounds: tuple[int, int, int, int]


@dataclass(frozen=True)
class ExercisedAction:
    action: Action
    resource_id: str | None = None

    def __post_init__(self) -> None:
        if self.action is Action.BACK and self.resource_id is not None:
            raise ScenarioError("back actions cannot reference a resource id")


@dataclass(frozen=True)
class ScreenObservation:
    step_index: int
    activity: str
    window: str | None
    components: tuple[ComponentMeta, ...]
    exercised: ExercisedAction | None = None


@dataclass(frozen=True)
class ReproductionScenario:
    """Ordered screens of one bug reproduction; the last screen is buggy."""

    bug_id: str
    screens: tuple[ScreenObservation, ...]

    def __post_init__(self) -> None:
        if not self.screens:
            raise ScenarioError(f"scenario {self.bug_id} has no screens")
        steps = [s.step_index for s in self.screens]
        if steps != sorted(set(steps)):
            raise ScenarioError(f"scenario {self.bug_id}: step indices not increasing")

    @property
    def buggy_screen(self) -> ScreenObservation:
        return self.screens[-1]


@dataclass(frozen=True)
class GuiTermSet:
    """Screen names (matched by file name) and component resource ids."""

    screen_terms: frozenset[str] = frozenset()
    component_ids: frozenset[str] = frozenset()

    def all_terms(self) -> list[str]:
        """Deterministic ordering: screen terms first, each group sorted."""
        return sorted(self.screen_terms) + sorted(self.component_ids)


_BOUNDS_RE = re.compile(r"\[(-?\d+),(-?\d+)\]\[(-?\d+),(-?\d+)\]")
_STEP_XML_RE = re.compile(r"step_(\d+)\.xml\Z")


def normalize_resource_id(raw: str | None) -> str | None:
    """Strip the package prefix: 'com.app:id/fab' -> 'fab'."""
    if not raw:
        return None
    if "id/" in raw:
        raw = raw.split("id/", 1)[1]
    return raw or None


def simple_class_name(name: str) -> str:
    """Last dotted component of a possibly fully-qualified runtime name."""
    return name.rsplit("/", 1)[-1].rsplit(".", 1)[-1]


def _parse_bounds(raw: str | None) -> tuple[int, int, int, int]:
    if raw:
        m = _BOUNDS_RE.match(raw)
        if m:
            return tuple(int(g) for g in m.groups())  # type: ignore[return-value]
    return (0, 0, 0, 0)


def _truthy(value: str | None) -> bool:
    return value == "true"


def parse_screen_dump(xml_text: str) -> list[ComponentMeta]:
    """Components of one uiautomator dump, de-duplicated by (id, bounds)."""
    root = ET.fromstring(xml_text)
    components: list[ComponentMeta] = []
    seen: set[tuple[str | None, tuple[int, int, int, int]]] = set()
    for node in root.iter("node"):
        rid = normalize_resource_id(node.get("resource-id"))
        bounds = _parse_bounds(node.get("bounds"))
        key = (rid, bounds)
        if key in seen:
            continue
        seen.add(key)
        components.append(
            ComponentMeta(
                resource_id=rid,
                class_name=node.get("class", ""),
                interactive=any(
                    _truthy(node.get(a))
                    for a in ("clickable", "long-clickable", "scrollable")
                ),
                bounds=bounds,
            )
        )
    return components


def _parse_actions(path: Path) -> dict[int, ExercisedAction]:
    actions: dict[int, ExercisedAction] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ScenarioError(f"{path}:{lineno}: expected '<step> <action> <id|->'")
        step_str, action_str, rid_str = fields
        try:
            step = int(step_str)
            action = Action(action_str)
        except ValueError as exc:
            raise ScenarioError(f"{path}:{lineno}: {exc}") from None
        rid = None if rid_str == "-" else normalize_resource_id(rid_str)
        if step in actions:
            raise ScenarioError(f"{path}:{lineno}: duplicate action for step {step}")
        actions[step] = ExercisedAction(action=action, resource_id=rid)
    return actions


def parse_scenario(scenario_dir: str | Path, bug_id: str | None = None) -> ReproductionScenario:
    """Parse a recorded scenario directory into typed screen observations."""
    scenario_dir = Path(scenario_dir)
    if not scenario_dir.is_dir():
        raise ScenarioError(f"scenario directory not found: {scenario_dir}")

    steps = sorted(
        int(m.group(1))
        for f in scenario_dir.iterdir()
        if (m := _STEP_XML_RE.match(f.name))
    )
    if not steps:
        raise ScenarioError(f"no step_<i>.xml dumps in {scenario_dir}")

    actions_path = scenario_dir / "actions.log"
    if not actions_path.is_file():
        raise ScenarioError(f"missing action log: {actions_path}")
    actions = _parse_actions(actions_path)

    screens = []
    for step in steps:
        xml_path = scenario_dir / f"step_{step}.xml"
        meta_path = scenario_dir / f"step_{step}.meta"
        try:
            components = parse_screen_dump(xml_path.read_text(encoding="utf-8"))
        except ET.ParseError as exc:
            raise ScenarioError(f"step {step}: malformed XML dump: {exc}") from None
        if not meta_path.is_file():
            raise ScenarioError(f"step {step}: missing meta file {meta_path.name}")
        meta_lines = meta_path.read_text(encoding="utf-8").splitlines()
        if len(meta_lines) < 2:
            raise ScenarioError(f"step {step}: meta file needs two lines")
        activity = simple_class_name(meta_lines[0].strip())
        window_raw = meta_lines[1].strip()
        window = None if window_raw in ("-", "") else simple_class_name(window_raw)

        exercised = actions.get(step)
        if exercised is not None and exercised.resource_id is not None:
            on_screen = {c.resource_id for c in components if c.resource_id}
            if exercised.resource_id not in on_screen:
                raise ScenarioError(
                    f"step {step}: exercised id {exercised.resource_id!r} "
                    "matches no component on the screen"
                )
        screens.append(
            ScreenObservation(
                step_index=step,
                activity=activity,
                window=window,
                components=tuple(components),
                exercised=exercised,
            )
        )

    return ReproductionScenario(bug_id=bug_id or scenario_dir.name, screens=tuple(screens))


def select_screens(scenario: ReproductionScenario, n: int) -> list[ScreenObservation]:
    """Last min(n, total) screens in order; the buggy screen is always kept."""
    if n < 2:
        raise ValueError(f"screen count must be >= 2, got {n}")
    return list(scenario.screens[-n:])


def _is_exercised_on(screen: ScreenObservation, component: ComponentMeta) -> bool:
    return (
        screen.exercised is not None
        and screen.exercised.resource_id is not None
        and screen.exercised.resource_id == component.resource_id
    )


def extract_terms(screens: list[ScreenObservation], info: GuiInfoType) -> GuiTermSet:
    """GUI terms of one information type over the selected screens.

    GS collects activity and window names. EGC collects resource ids of
    exercised components, ignoring Back presses and components without ids.
    SC collects resource ids of all interactive components (an exercised
    component counts as interactive). GS_EGC and GS_SC are unions.
    """
    if not screens:
        raise ValueError("extract_terms requires at least one screen")

    screen_terms: set[str] = set()
    component_ids: set[str] = set()

    if info in (GuiInfoType.GS, GuiInfoType.GS_EGC, GuiInfoType.GS_SC):
        for s in screens:
            screen_terms.add(s.activity)
            if s.window:
                screen_terms.add(s.window)

    if info in (GuiInfoType.EGC, GuiInfoType.GS_EGC):
        for s in screens:
            ex = s.exercised
            if ex is not None and ex.action is not Action.BACK and ex.resource_id:
                component_ids.add(ex.resource_id)

    if info in (GuiInfoType.SC, GuiInfoType.GS_SC):
        for s in screens:
            for c in s.components:
                if c.resource_id and (c.interactive or _is_exercised_on(s, c)):
                    component_ids.add(c.resource_id)

    return GuiTermSet(
        screen_terms=frozenset(screen_terms), component_ids=frozenset(component_ids)
    )
