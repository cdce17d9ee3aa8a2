"""Hand-built LaTeX corpus with 12 planted citation contexts.

Plants cover comment lines (which must yield nothing), multi-key commands,
and multi-file includes. Each plant pairs a citation key with a distinctive
substring of the sentence that cites it.
"""

CORPUS_FILES = {
    "main.tex": r"""\documentclass{article}
\begin{document}
\section{Introduction}
Neural approaches build on \cite{adams2019} directly.
Joint models \citep{brown2020,chen2021} dominate recent work.
% A commented claim cites \cite{ghost1} here.
We differ from \citet{davis2018} in scope.

\input{sections/related}
\input{sections/method}
\section{Conclusion}
Future work extends \cite{adams2019,evans2022} naturally.
% \citep{ghost2}
\bibliography{refs}
\end{document}
""",
    "sections/related.tex": r"""\section{Related Work}
Early systems \cite{fong2017} used rules exclusively.
Unlike \citep{garcia2019}, we learn end to end.
Hybrid designs \citet{hsu2020} mix both; context also comes from \cite{brown2020} here.
% More ghosts live here: \cite{ghost3,ghost4}
""",
    "sections/method.tex": r"""\section{Method}
Our loss follows \cite{ito2021} with margin tweaks.
The sampling scheme of \citep{jones2022} is reused verbatim.
""",
    "refs.bib": "\n".join(
        f"@article{{{key}, title={{Planted reference {key}}}, year={{20{y}}}}}"
        for key, y in [
            ("adams2019", 19),
            ("brown2020", 20),
            ("chen2021", 21),
            ("davis2018", 18),
            ("evans2022", 22),
            ("fong2017", 17),
            ("garcia2019", 19),
            ("hsu2020", 20),
            ("ito2021", 21),
            ("jones2022", 22),
        ]
    ),
}

# (citation key, distinctive substring of the citing sentence)
PLANTED_CONTEXTS = [
    ("adams2019", "build on"),
    ("brown2020", "dominate recent work"),
    ("chen2021", "dominate recent work"),
    ("davis2018", "differ from"),
    ("fong2017", "used rules"),
    ("garcia2019", "learn end to end"),
    ("hsu2020", "mix both"),
    ("brown2020", "context also comes"),
    ("ito2021", "margin tweaks"),
    ("jones2022", "reused verbatim"),
    ("adams2019", "Future work extends"),
    ("evans2022", "Future work extends"),
]

GHOST_KEYS = ("ghost1", "ghost2", "ghost3", "ghost4")

assert len(PLANTED_CONTEXTS) == 12
