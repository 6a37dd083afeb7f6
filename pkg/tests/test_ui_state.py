from types import SimpleNamespace

from dscim_app.state.ui_state import files_signature, uploads_changed


def _upload(name, size):
    return SimpleNamespace(name=name, size=size)


def test_files_signature_ignores_missing_uploads():
    assert files_signature([None, None]) is None
    sig = files_signature([_upload("w.csv", 10), None, _upload("a.csv", 20)])
    assert sig == (("a.csv", 20), ("w.csv", 10))


def test_uploads_changed():
    files = [_upload("a.csv", 20), _upload("w.csv", 10)]
    stored = files_signature(files)
    assert not uploads_changed(stored, files)
    assert uploads_changed(stored, [_upload("a.csv", 21), _upload("w.csv", 10)])
    assert uploads_changed(None, files)
    # sem uploads não há o que avisar
    assert not uploads_changed(stored, [None, None])
