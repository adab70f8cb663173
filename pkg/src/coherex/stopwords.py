"""Default English stopword list (SMART-style subset) and loading helpers."""

from pathlib import Path

from .errors import DataError

DEFAULT_STOPWORDS = frozenset("""
a about above after again against all almost alone along already also
although always am among an and another any anybody anyone anything are
around as at back be became because become becomes been before behind
being below between both but by came can cannot come could did do does
doing down during each either else enough etc even ever every everybody
everyone everything far few for from further get gets give given go goes
going gone got had has have having he hence her here hers herself him
himself his how however i if in indeed instead into is it its itself
just keep kept last least less let like likely made make many may maybe
me might mine more moreover most mostly much must my myself namely
neither never nevertheless next no nobody none nor not nothing now of
off often on once one only onto or other others otherwise our ours
ourselves out over own per perhaps please quite rather really said same
say says see seem seemed seeming seems several shall she should since so
some somebody somehow someone something sometimes somewhat somewhere
still such than that the their theirs them themselves then thence there
thereafter thereby therefore therein these they this those though
through throughout thus to together too toward towards under until unto
up upon us use used uses very via was we well were what whatever when
whence whenever where whereas whereby wherein whether which while whither
who whoever whole whom whose why will with within without would yet you
your yours yourself yourselves
""".split())


def load_stopwords(source: str | None = None) -> frozenset[str]:
    """Resolve a stopword list: None or "default" for the built-in list,
    otherwise a path to a file with one word per line."""
    if source is None or source == "default":
        return DEFAULT_STOPWORDS
    path = Path(source)
    if not path.is_file():
        raise DataError(f"stopword list not found: {source}")
    words = [line.strip().lower() for line in path.read_text("utf-8").splitlines()]
    return frozenset(w for w in words if w)
