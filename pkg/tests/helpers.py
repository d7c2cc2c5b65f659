from mixedsimplex.models.simplex import Face, FaceSet


def fs(K: int, *faces: tuple[int, ...]) -> FaceSet:
    """FaceSet from 1-based index tuples, as written in the docs."""
    return FaceSet.of(K, [Face.from_indices(f, one_based=True) for f in faces])
