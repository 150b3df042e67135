""" Quadrature grids, function specs and boundary operators """
