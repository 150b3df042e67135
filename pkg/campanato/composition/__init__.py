""" Composition operators induced by analytic self-maps """
