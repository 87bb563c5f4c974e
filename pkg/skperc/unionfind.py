# -*- coding: utf-8 -*-
"""
Disjoint-set forest
===================
"""


class UnionFind:
    """Union-find data structure over hashable items.

    Each instance X maintains a family of disjoint sets, supporting:

    - X[item] returns a name for the set containing the given item.
      Each set is named by one of its members; as long as the set remains
      unchanged it keeps the same name. Unknown items are added as singletons.

    - X.union(item1, item2, ...) merges the sets containing each item
      into a single set. The largest set lends its name to the union.

    Parameters
    ----------
    items : iterable, optional
        Items to register as singletons upon construction.

    Examples
    --------
    >>> uf = UnionFind(range(4))
    >>> uf.union(0, 2)
    >>> uf[0] == uf[2], uf[0] == uf[1]
    (True, False)
    """

    def __init__(self, items=tuple()):
        self.sizes = {}
        self.parents = {}
        for item in items:
            self.add(item)

    def add(self, item):
        """Register ``item`` as a singleton, if it is not known already."""
        if item not in self.parents:
            self.parents[item] = item
            self.sizes[item] = 1

    def __contains__(self, item):
        return item in self.parents

    def __getitem__(self, item):
        """Find and return the name of the set containing the item."""
        if item not in self.parents:
            self.add(item)
            return item

        # find path of items leading to the root
        path = [item]
        root = self.parents[item]
        while root != path[-1]:
            path.append(root)
            root = self.parents[root]

        # compress the path and return
        for ancestor in path:
            self.parents[ancestor] = root
        return root

    def __iter__(self):
        """Iterate through all items ever found or unioned by this structure."""
        return iter(self.parents)

    def union(self, *items):
        """Find the sets containing the items and merge them all."""
        roots = {self[x] for x in items}
        if len(roots) < 2:
            return
        heaviest = max(roots, key=lambda r: (self.sizes[r], repr(r)))
        for r in roots:
            if r != heaviest:
                self.parents[r] = heaviest
                self.sizes[heaviest] += self.sizes.pop(r)

    def connected(self, first, second):
        """Whether two items belong to the same set."""
        return self[first] == self[second]

    def groups(self):
        """
        Disjoint sets, in order of first registration of their members.

        Returns
        -------
        groups : list of lists
        """
        by_root = dict()
        for item in self.parents:
            by_root.setdefault(self[item], []).append(item)
        return list(by_root.values())
