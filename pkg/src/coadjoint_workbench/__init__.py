"""Computational Lie theory for semi-direct products g x| V of exceptional algebras."""
