"""From a recorded reproduction scenario to GUI-related source files.

Parses the bundled scenario (uiautomator dumps + activity/window records +
action log), extracts GUI terms per information type, and maps them to
files: screen names match file basenames, component resource ids match
lexical references like R.id.<id>.
"""

from pathlib import Path

from guiloc import GuiInfoType, extract_terms, gui_related_files, load_corpus, parse_scenario, select_screens

FIXTURE = Path(__file__).parent.parent / "tests" / "fixtures" / "markor"

corpus = load_corpus(FIXTURE / "corpus", app_id="markor")
scenario = parse_scenario(FIXTURE / "scenario", bug_id="markor-1")

print(f"scenario has {len(scenario.screens)} screens; the last one is buggy:")
for s in scenario.screens:
    action = f"{s.exercised.action.value} {s.exercised.resource_id}" if s.exercised else "-"
    print(f"  step {s.step_index}: activity={s.activity} window={s.window} action={action}")

screens = select_screens(scenario, 2)
print("\nGUI terms over the last 2 screens:")
for info in GuiInfoType:
    terms = extract_terms(screens, info)
    print(f"  {info.value:7s} screens={sorted(terms.screen_terms)} ids={sorted(terms.component_ids)}")

print("\nGUI-related files (n=2):")
for info in GuiInfoType:
    files = gui_related_files(scenario, corpus, info, 2)
    names = sorted(p.rsplit("/", 1)[-1] for p in files)
    print(f"  {info.value:7s} {len(files):2d} files: {names}")
