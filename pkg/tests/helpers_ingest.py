"""Builders for recorded-style upstream fixtures (Atom XML, tarballs, S2 JSON)."""

import io
import json
import tarfile


def atom_feed(entries: list[dict]) -> bytes:
    """arXiv query Atom feed with the given entries."""
    blocks = []
    for e in entries:
        authors = "".join(
            f"<author><name>{name}</name></author>" for name in e.get("authors", ())
        )
        blocks.append(
            f"""  <entry>
    <id>http://arxiv.org/abs/{e["arxiv_id"]}v1</id>
    <title>{e["title"]}</title>
    <summary>{e.get("abstract", "An abstract.")}</summary>
    <published>{e.get("year", 2024)}-01-15T00:00:00Z</published>
    {authors}
  </entry>"""
        )
    feed = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<feed xmlns="http://www.w3.org/2005/Atom">\n'
        "<title>ArXiv Query Results</title>\n" + "\n".join(blocks) + "\n</feed>"
    )
    return feed.encode("utf-8")


def make_targz(files: dict[str, str]) -> bytes:
    buffer = io.BytesIO()
    with tarfile.open(fileobj=buffer, mode="w:gz") as tar:
        for name, content in sorted(files.items()):
            raw = content.encode("utf-8")
            info = tarfile.TarInfo(name=name)
            info.size = len(raw)
            tar.addfile(info, io.BytesIO(raw))
    return buffer.getvalue()


def s2_paper(
    paper_id: str,
    title: str,
    *,
    abstract: str = "",
    year: int | None = 2024,
    authors: tuple[str, ...] = (),
    venue: str | None = None,
    arxiv_id: str | None = None,
    citation_count: int | None = None,
) -> dict:
    return {
        "paperId": paper_id,
        "title": title,
        "abstract": abstract or None,
        "year": year,
        "authors": [{"name": a} for a in authors],
        "venue": venue,
        "url": f"https://www.semanticscholar.org/paper/{paper_id}",
        "citationCount": citation_count,
        "externalIds": {"ArXiv": arxiv_id} if arxiv_id else {},
    }


def s2_metadata_body(main: dict, references: list[dict]) -> bytes:
    doc = dict(main)
    doc["references"] = references
    return json.dumps(doc).encode("utf-8")


def s2_recommendations_body(papers: list[dict]) -> bytes:
    return json.dumps({"recommendedPapers": papers}).encode("utf-8")
